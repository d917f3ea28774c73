#include "stabring/zlinalg.hpp"

#include <algorithm>
#include <sstream>

#include "stabring/error.hpp"

namespace stabring {

void normalize(SparseVec& v) {
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  SparseVec out;
  out.reserve(v.size());
  for (auto& e : v) {
    if (!out.empty() && out.back().first == e.first) {
      out.back().second += e.second;
    } else {
      if (!out.empty() && out.back().second == 0) out.pop_back();
      out.push_back(std::move(e));
    }
  }
  if (!out.empty() && out.back().second == 0) out.pop_back();
  v = std::move(out);
}

SparseVec axpy(const SparseVec& a, const Integer& c, const SparseVec& b) {
  if (c == 0) return a;
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, c * b[j].second);
      ++j;
    } else {
      Integer s = a[i].second + c * b[j].second;
      if (s != 0) out.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec scaled(const SparseVec& v, const Integer& c) {
  if (c == 0) return {};
  SparseVec out(v);
  for (auto& e : out) e.second *= c;
  return out;
}

IntMatrix IntMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries) {
  IntMatrix m(rows, cols);
  for (auto& t : entries) {
    if (t.row >= rows || t.col >= cols) throw LinalgError("triplet out of range");
    m.cols_[t.col].emplace_back(t.row, std::move(t.value));
  }
  for (auto& c : m.cols_) normalize(c);
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.cols_[i].emplace_back(static_cast<std::uint32_t>(i), Integer(1));
  return m;
}

IntMatrix IntMatrix::from_dense(const std::vector<std::vector<Integer>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw LinalgError("ragged dense matrix");
    for (std::size_t j = 0; j < c; ++j)
      if (rows[i][j] != 0) m.cols_[j].emplace_back(static_cast<std::uint32_t>(i), rows[i][j]);
  }
  return m;
}

std::size_t IntMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& c : cols_) n += c.size();
  return n;
}

bool IntMatrix::is_zero() const {
  for (const auto& c : cols_)
    if (!c.empty()) return false;
  return true;
}

void IntMatrix::set_column(std::size_t j, SparseVec v) {
  normalize(v);
  if (!v.empty() && v.back().first >= rows_) throw LinalgError("column entry out of range");
  cols_.at(j) = std::move(v);
}

void IntMatrix::append_column(SparseVec v) {
  cols_.emplace_back();
  set_column(cols_.size() - 1, std::move(v));
}

Integer IntMatrix::at(std::size_t i, std::size_t j) const {
  const auto& c = cols_.at(j);
  auto it = std::lower_bound(c.begin(), c.end(), i,
                             [](const auto& e, std::size_t r) { return e.first < r; });
  if (it != c.end() && it->first == i) return it->second;
  return 0;
}

std::vector<Triplet> IntMatrix::triplets() const {
  std::vector<Triplet> out;
  for (std::size_t j = 0; j < cols_.size(); ++j)
    for (const auto& [i, v] : cols_[j]) out.push_back({i, static_cast<std::uint32_t>(j), v});
  std::sort(out.begin(), out.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  return out;
}

std::vector<std::vector<Integer>> IntMatrix::dense() const {
  std::vector<std::vector<Integer>> d(rows_, std::vector<Integer>(cols_.size(), 0));
  for (std::size_t j = 0; j < cols_.size(); ++j)
    for (const auto& [i, v] : cols_[j]) d[i][j] = v;
  return d;
}

SparseVec IntMatrix::apply(const SparseVec& x) const {
  SparseVec out;
  for (const auto& [j, c] : x) {
    if (j >= cols_.size()) throw LinalgError("vector length mismatch");
    for (const auto& [i, v] : cols_[j]) out.emplace_back(i, c * v);
  }
  normalize(out);
  return out;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols() != rhs.rows()) throw LinalgError("matrix product shape mismatch");
  IntMatrix m(rows_, rhs.cols());
  for (std::size_t j = 0; j < rhs.cols(); ++j) m.cols_[j] = apply(rhs.cols_[j]);
  return m;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols() != rhs.cols()) throw LinalgError("matrix sum shape mismatch");
  IntMatrix m(rows_, cols());
  for (std::size_t j = 0; j < cols(); ++j) m.cols_[j] = axpy(cols_[j], 1, rhs.cols_[j]);
  return m;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols() != rhs.cols()) throw LinalgError("matrix difference shape mismatch");
  IntMatrix m(rows_, cols());
  for (std::size_t j = 0; j < cols(); ++j) m.cols_[j] = axpy(cols_[j], -1, rhs.cols_[j]);
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols(), rows_);
  for (std::size_t j = 0; j < cols_.size(); ++j)
    for (const auto& [i, v] : cols_[j]) t.cols_[i].emplace_back(static_cast<std::uint32_t>(j), v);
  return t;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_) throw LinalgError("hconcat row mismatch");
  IntMatrix m = *this;
  m.cols_.insert(m.cols_.end(), rhs.cols_.begin(), rhs.cols_.end());
  return m;
}

IntMatrix IntMatrix::permuted(const std::vector<std::size_t>& row_perm,
                              const std::vector<std::size_t>& col_perm) const {
  if (row_perm.size() != rows_ || col_perm.size() != cols()) throw LinalgError("permutation size mismatch");
  IntMatrix m(rows_, cols());
  for (std::size_t j = 0; j < cols(); ++j) {
    SparseVec c;
    for (const auto& [i, v] : cols_[j]) c.emplace_back(static_cast<std::uint32_t>(row_perm[i]), v);
    normalize(c);
    m.cols_[col_perm[j]] = std::move(c);
  }
  return m;
}

std::string IntMatrix::to_text() const {
  std::ostringstream os;
  auto t = triplets();
  os << rows_ << ' ' << cols() << ' ' << t.size() << '\n';
  for (const auto& e : t) os << e.row << ' ' << e.col << ' ' << e.value.get_str() << '\n';
  return os.str();
}

IntMatrix IntMatrix::from_text(const std::string& text) {
  std::istringstream is(text);
  std::size_t r = 0, c = 0, n = 0;
  if (!(is >> r >> c >> n)) throw LinalgError("matrix text: bad header");
  std::vector<Triplet> entries;
  for (std::size_t k = 0; k < n; ++k) {
    std::uint32_t i = 0, j = 0;
    std::string v;
    if (!(is >> i >> j >> v)) throw LinalgError("matrix text: truncated entry list");
    entries.push_back({i, j, Integer(v)});
  }
  return from_triplets(r, c, std::move(entries));
}

LatticeEchelon::LatticeEchelon(std::size_t dim, bool track_kernel) : dim_(dim), track_(track_kernel) {}

bool LatticeEchelon::insert(SparseVec v) {
  normalize(v);
  SparseVec combo;
  if (track_) combo.emplace_back(static_cast<std::uint32_t>(inserted_), Integer(1));
  ++inserted_;
  while (!v.empty()) {
    const std::uint32_t r = v.front().first;
    if (r >= dim_) throw LinalgError("lattice vector out of range");
    auto it = basis_.find(r);
    if (it == basis_.end()) {
      basis_.emplace(r, Pivot{std::move(v), std::move(combo)});
      return true;
    }
    Pivot& b = it->second;
    const Integer br = b.vec.front().second;
    const Integer vr = v.front().second;
    if (mpz_divisible_p(vr.get_mpz_t(), br.get_mpz_t())) {
      const Integer q = -(vr / br);
      v = axpy(v, q, b.vec);
      if (track_) combo = axpy(combo, q, b.combo);
      continue;
    }
    Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), br.get_mpz_t(), vr.get_mpz_t());
    const Integer x = vr / g, y = -(br / g);
    SparseVec nb = axpy(scaled(b.vec, s), t, v);
    SparseVec nv = axpy(scaled(b.vec, x), y, v);
    if (track_) {
      SparseVec nbc = axpy(scaled(b.combo, s), t, combo);
      combo = axpy(scaled(b.combo, x), y, combo);
      b.combo = std::move(nbc);
    }
    b.vec = std::move(nb);
    v = std::move(nv);
  }
  if (track_) kernel_.push_back(std::move(combo));
  return false;
}

void LatticeEchelon::insert_columns(const IntMatrix& m) {
  if (m.rows() != dim_) throw LinalgError("lattice dimension mismatch");
  for (std::size_t j = 0; j < m.cols(); ++j) insert(m.column(j));
}

bool LatticeEchelon::coordinates(const SparseVec& v0, SparseVec& coords) const {
  coords.clear();
  SparseVec v = v0;
  normalize(v);
  while (!v.empty()) {
    auto it = basis_.find(v.front().first);
    if (it == basis_.end()) return false;
    const Integer& br = it->second.vec.front().second;
    const Integer& vr = v.front().second;
    if (!mpz_divisible_p(vr.get_mpz_t(), br.get_mpz_t())) return false;
    const Integer q = vr / br;
    coords.emplace_back(static_cast<std::uint32_t>(std::distance(basis_.begin(), it)), q);
    v = axpy(v, -q, it->second.vec);
  }
  return true;
}

bool LatticeEchelon::contains(const SparseVec& v0) const {
  SparseVec v = v0;
  normalize(v);
  while (!v.empty()) {
    auto it = basis_.find(v.front().first);
    if (it == basis_.end()) return false;
    const Integer& br = it->second.vec.front().second;
    const Integer& vr = v.front().second;
    if (!mpz_divisible_p(vr.get_mpz_t(), br.get_mpz_t())) return false;
    v = axpy(v, -(vr / br), it->second.vec);
  }
  return true;
}

std::vector<SparseVec> LatticeEchelon::basis() const {
  std::vector<SparseVec> out;
  out.reserve(basis_.size());
  for (const auto& [r, p] : basis_) out.push_back(p.vec);
  return out;
}

std::vector<Integer> LatticeEchelon::invariant_factors() const {
  std::vector<Integer> units;
  std::vector<const SparseVec*> unit_cols;
  std::vector<bool> unit_row(dim_, false);
  std::vector<SparseVec> rest;
  for (const auto& [r, p] : basis_) {
    if (abs(p.vec.front().second) == 1) {
      unit_row[r] = true;
    }
  }
  for (const auto& [r, p] : basis_) {
    if (unit_row[r]) {
      units.emplace_back(1);
      continue;
    }
    // Clear the entries at unit pivot rows, in increasing row order.
    SparseVec c = p.vec;
    std::uint32_t cursor = 0;
    for (;;) {
      auto it = std::find_if(c.begin(), c.end(),
                             [&](const auto& e) { return e.first >= cursor && unit_row[e.first]; });
      if (it == c.end()) break;
      const std::uint32_t row = it->first;
      const SparseVec& b = basis_.at(row).vec;
      const Integer q = -(it->second / b.front().second);
      c = axpy(c, q, b);
      cursor = row + 1;
    }
    rest.push_back(std::move(c));
  }
  if (!rest.empty()) {
    std::vector<std::uint32_t> rows;
    for (const auto& c : rest)
      for (const auto& e : c) rows.push_back(e.first);
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    std::vector<std::vector<Integer>> m(rows.size(), std::vector<Integer>(rest.size(), 0));
    for (std::size_t j = 0; j < rest.size(); ++j)
      for (const auto& [i, v] : rest[j]) {
        auto pos = std::lower_bound(rows.begin(), rows.end(), i) - rows.begin();
        m[pos][j] = v;
      }
    auto d = dense_invariants(std::move(m));
    units.insert(units.end(), d.begin(), d.end());
  }
  return units;
}

namespace {

void fix_divisibility_chain(std::vector<Integer>& d) {
  for (auto& x : d) x = abs(x);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      Integer g, l;
      mpz_gcd(g.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      d[i] = g;
      d[j] = l;
    }
}

// Dense elimination on m; optional row transform u (rows x rows) and column
// transform v (cols x cols) receive the same operations.
struct DenseSmith {
  std::vector<std::vector<Integer>>& m;
  std::vector<std::vector<Integer>>* u;
  std::vector<std::vector<Integer>>* v;
  std::size_t rows, cols;

  void swap_rows(std::size_t a, std::size_t b) {
    std::swap(m[a], m[b]);
    if (u) std::swap((*u)[a], (*u)[b]);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (auto& r : m) std::swap(r[a], r[b]);
    if (v)
      for (auto& r : *v) std::swap(r[a], r[b]);
  }
  // row_a += c * row_b
  void add_row(std::size_t a, std::size_t b, const Integer& c) {
    for (std::size_t j = 0; j < cols; ++j)
      if (m[b][j] != 0) m[a][j] += c * m[b][j];
    if (u)
      for (std::size_t j = 0; j < rows; ++j)
        if ((*u)[b][j] != 0) (*u)[a][j] += c * (*u)[b][j];
  }
  // col_a += c * col_b
  void add_col(std::size_t a, std::size_t b, const Integer& c) {
    for (std::size_t i = 0; i < rows; ++i)
      if (m[i][b] != 0) m[i][a] += c * m[i][b];
    if (v)
      for (std::size_t i = 0; i < cols; ++i)
        if ((*v)[i][b] != 0) (*v)[i][a] += c * (*v)[i][b];
  }

  bool place_min(std::size_t t) {
    bool found = false;
    std::size_t bi = 0, bj = 0;
    Integer best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (!found || abs(m[i][j]) < best)) {
          best = abs(m[i][j]);
          bi = i;
          bj = j;
          found = true;
          if (best == 1) goto done;
        }
  done:
    if (!found) return false;
    if (bi != t) swap_rows(bi, t);
    if (bj != t) swap_cols(bj, t);
    return true;
  }

  // Clears row t and column t outside the pivot.
  void clear_cross(std::size_t t) {
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        Integer q = m[i][t] / m[t][t];
        if (q != 0) add_row(i, t, -q);
        if (m[i][t] != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        Integer q = m[t][j] / m[t][t];
        if (q != 0) add_col(j, t, -q);
        if (m[t][j] != 0) dirty = true;
      }
      if (!dirty) return;
      // Move the smallest remainder into the pivot position.
      std::size_t bi = t, bj = t;
      Integer best = abs(m[t][t]);
      for (std::size_t i = t + 1; i < rows; ++i)
        if (m[i][t] != 0 && abs(m[i][t]) < best) {
          best = abs(m[i][t]);
          bi = i;
          bj = t;
        }
      for (std::size_t j = t + 1; j < cols; ++j)
        if (m[t][j] != 0 && abs(m[t][j]) < best) {
          best = abs(m[t][j]);
          bi = t;
          bj = j;
        }
      if (bi != t) swap_rows(bi, t);
      if (bj != t) swap_cols(bj, t);
    }
  }

  std::size_t run(bool enforce_chain) {
    std::size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
      if (!place_min(t)) break;
      for (;;) {
        clear_cross(t);
        if (!enforce_chain) break;
        bool fixed = true;
        for (std::size_t i = t + 1; i < rows && fixed; ++i)
          for (std::size_t j = t + 1; j < cols; ++j)
            if (m[i][j] != 0 && !mpz_divisible_p(m[i][j].get_mpz_t(), m[t][t].get_mpz_t())) {
              add_row(t, i, 1);
              fixed = false;
              break;
            }
        if (fixed) break;
      }
    }
    return t;
  }
};

std::vector<std::vector<Integer>> dense_identity(std::size_t n) {
  std::vector<std::vector<Integer>> id(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

}  // namespace

std::vector<Integer> dense_invariants(std::vector<std::vector<Integer>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  DenseSmith s{m, nullptr, nullptr, rows, cols};
  const std::size_t r = s.run(false);
  std::vector<Integer> d;
  for (std::size_t t = 0; t < r; ++t) d.push_back(m[t][t]);
  fix_divisibility_chain(d);
  return d;
}

SmithForm smith_normal_form(const IntMatrix& a) {
  auto m = a.dense();
  auto u = dense_identity(a.rows());
  auto v = dense_identity(a.cols());
  DenseSmith s{m, &u, &v, a.rows(), a.cols()};
  const std::size_t r = s.run(true);
  SmithForm out;
  for (std::size_t t = 0; t < r; ++t) {
    if (m[t][t] < 0) {
      for (auto& x : m[t]) x = -x;
      for (auto& x : u[t]) x = -x;
    }
    out.invariants.push_back(m[t][t]);
  }
  out.u = IntMatrix::from_dense(u);
  out.v = IntMatrix::from_dense(v);
  out.d = a.rows() && a.cols() ? IntMatrix::from_dense(m) : IntMatrix(a.rows(), a.cols());
  if (a.rows() == 0) out.u = IntMatrix(0, 0);
  if (a.cols() == 0) out.v = IntMatrix(0, 0);
  return out;
}

std::vector<Integer> smith_invariants(const IntMatrix& a) {
  LatticeEchelon e(a.rows());
  e.insert_columns(a);
  return e.invariant_factors();
}

std::size_t matrix_rank(const IntMatrix& a) {
  LatticeEchelon e(a.rows());
  e.insert_columns(a);
  return e.rank();
}

std::string HomologyGroup::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank) {
    os << "Z";
    if (free_rank > 1) os << '^' << free_rank;
    first = false;
  }
  for (const auto& t : torsion) {
    if (!first) os << " + ";
    os << "Z/" << t.get_str();
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

HomologyGroup chain_homology(const IntMatrix& d_out, const IntMatrix& d_in) {
  if (d_out.cols() != d_in.rows()) throw LinalgError("chain_homology: dimension mismatch");
  if (!(d_out * d_in).is_zero()) throw LinalgError("chain_homology: composite is nonzero");
  const std::size_t rank_out = matrix_rank(d_out);
  const auto inv = smith_invariants(d_in);
  HomologyGroup h;
  h.free_rank = d_out.cols() - rank_out - inv.size();
  for (const auto& x : inv)
    if (x > 1) h.torsion.push_back(x);
  return h;
}

HomologyGroup cokernel(const IntMatrix& relations) {
  const auto inv = smith_invariants(relations);
  HomologyGroup h;
  h.free_rank = relations.rows() - inv.size();
  for (const auto& x : inv)
    if (x > 1) h.torsion.push_back(x);
  return h;
}

HomologyGroup kernel_of_induced(const IntMatrix& f, const IntMatrix& src_rel, const IntMatrix& dst_rel) {
  const std::size_t s = f.cols();
  if (src_rel.rows() != s || dst_rel.rows() != f.rows())
    throw LinalgError("kernel_of_induced: dimension mismatch");
  LatticeEchelon joint(f.rows(), true);
  joint.insert_columns(f.hconcat(dst_rel));
  LatticeEchelon lattice(s);
  for (const auto& k : joint.kernel()) {
    SparseVec proj;
    for (const auto& e : k)
      if (e.first < s) proj.push_back(e);
    lattice.insert(std::move(proj));
  }
  const std::size_t k = lattice.rank();
  IntMatrix coords(k, src_rel.cols());
  for (std::size_t j = 0; j < src_rel.cols(); ++j) {
    SparseVec c;
    if (!lattice.coordinates(src_rel.column(j), c))
      throw LinalgError("kernel_of_induced: map does not respect the relations");
    coords.set_column(j, std::move(c));
  }
  const auto inv = smith_invariants(coords);
  HomologyGroup h;
  h.free_rank = k - inv.size();
  for (const auto& x : inv)
    if (x > 1) h.torsion.push_back(x);
  return h;
}

}  // namespace stabring
