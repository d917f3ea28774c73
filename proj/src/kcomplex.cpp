#include "stabring/kcomplex.hpp"

#include <sstream>

#include "stabring/error.hpp"

namespace stabring {

KComplex::KComplex(const GradedModule& module, int p_max, int n_max)
    : module_(&module), p_max_(p_max), n_max_(n_max), g_(module.ring->group().order()) {
  if (module.side != Side::left) throw ModuleError("K-complex: needs a left module");
  if (!module.has_free_components()) throw ModuleError("K-complex: module components must be free");
  if (p_max < 0 || n_max < 0 || n_max > module.top) throw ModuleError("K-complex: window exceeds the module");
  const GradedRing& ring = *module.ring;
  regular_ = module.generator_class.size() == static_cast<std::size_t>(module.top + 1) && module.vanishes_above == std::nullopt;
  for (int n = 0; regular_ && n <= module.top; ++n) {
    if (module.gens(n) != ring.basis_size(n)) regular_ = false;
    for (std::size_t j = 0; regular_ && j < module.generator_class[n].size(); ++j)
      if (module.generator_class[n][j] != j) regular_ = false;
  }
  pow_.assign(p_max + 3, 1);
  for (int p = 1; p < p_max + 3; ++p) pow_[p] = pow_[p - 1] * g_ * g_;
  d_.resize(p_max + 1);
  for (int p = 0; p <= p_max; ++p)
    for (int n = 0; n <= n_max; ++n) {
      if (p == 0) {
        d_[p].emplace_back(0, dim(0, n));
        continue;
      }
      IntMatrix m(dim(p - 1, n), dim(p, n));
      for (std::size_t c = 0; c < m.cols(); ++c) m.set_column(c, d_column(p, n, c));
      d_[p].push_back(std::move(m));
    }
}

std::size_t KComplex::dim(int p, int n) const {
  if (p < 0 || n - p < 0) return 0;
  return static_cast<std::size_t>(pow_.at(p)) * mdim(n - p);
}

const IntMatrix& KComplex::d(int p, int n) const { return d_.at(p).at(n); }

std::vector<Element> KComplex::tuple_of(int p, std::size_t rank) const {
  return TupleCodec(g_, 2 * p).decode(rank);
}

SparseVec KComplex::d_column(int p, int n, std::size_t col) const {
  if (p == 0) return {};
  const int k = n - p;
  const std::size_t md = mdim(k), md_next = mdim(k + 1);
  const std::size_t t_rank = col / md, j = col % md;
  const auto t = tuple_of(p, t_rank);
  const FiniteGroup& G = module_->ring->group();
  // suffix[i] = c_{i+1} ... c_p with c_i = [a_i, b_i] (pairs numbered from 1).
  std::vector<Element> suffix(p + 1, 0);
  for (int i = p; i >= 1; --i) suffix[i - 1] = G.mul(G.commutator(t[2 * i - 2], t[2 * i - 1]), suffix[i]);
  const TupleCodec shorter(g_, 2 * (p - 1));
  SparseVec out;
  std::vector<Element> rest;
  rest.reserve(2 * (p - 1));
  for (int kk = 1; kk <= p; ++kk) {
    const Element dk = suffix[kk];
    const Element a = G.conjugate(t[2 * kk - 2], dk), b = G.conjugate(t[2 * kk - 1], dk);
    rest.clear();
    for (int i = 1; i <= p; ++i)
      if (i != kk) rest.insert(rest.end(), {t[2 * i - 2], t[2 * i - 1]});
    const std::uint64_t base = shorter.encode(rest) * md_next;
    const int sign = kk % 2 == 1 ? 1 : -1;
    for (const auto& [r, v] : module_->action(k, a, b).column(j))
      out.emplace_back(static_cast<std::uint32_t>(base + r), sign * v);
  }
  normalize(out);
  return out;
}

void KComplex::require_regular() const {
  if (!regular_) throw ModuleError("K-complex: operation needs the regular module R");
}

SparseVec KComplex::right_mult(int p, int n, std::size_t col, Element g, Element h) const {
  require_regular();
  const int k = n - p;
  const std::size_t md = mdim(k), t_rank = col / md, j = col % md;
  const std::size_t w = module_->ring->right_pair(k, j, g, h);
  return {{static_cast<std::uint32_t>(t_rank * mdim(k + 1) + w), Integer(1)}};
}

SparseVec KComplex::u_column(int p, int n, std::size_t col) const {
  const int k = n - p;
  const std::size_t md = mdim(k), t_rank = col / md, j = col % md;
  SparseVec out;
  for (const auto& [r, v] : module_->u_action(k).column(j))
    out.emplace_back(static_cast<std::uint32_t>(t_rank * mdim(k + 1) + r), v);
  return out;
}

SparseVec KComplex::homotopy_with_rep(int p, int n, std::size_t col, Element g, Element h,
                                      std::span<const Element> class_rep) const {
  require_regular();
  const FiniteGroup& G = module_->ring->group();
  const int k = n - p;
  const std::size_t md = mdim(k), t_rank = col / md, j = col % md;
  const auto t = tuple_of(p, t_rank);
  Element tau = 0;
  for (int i = 0; i < p; ++i) tau = G.mul(tau, G.commutator(t[2 * i], t[2 * i + 1]));
  tau = G.mul(tau, evaluate_boundary(class_rep, G));
  // x^{tau^-1} = tau x tau^-1.
  const Element ti = G.inv(tau);
  const Element g2 = G.conjugate(g, ti), h2 = G.conjugate(h, ti);
  const std::uint64_t rank = (static_cast<std::uint64_t>(g2) * g_ + h2) * pow_.at(p) + t_rank;
  return {{static_cast<std::uint32_t>(rank * md + j), Integer(1)}};
}

SparseVec KComplex::homotopy(int p, int n, std::size_t col, Element g, Element h) const {
  require_regular();
  const int k = n - p;
  const std::size_t j = col % mdim(k);
  return homotopy_with_rep(p, n, col, g, h, module_->ring->rep(k, j));
}

HomologyGroup kc_homology(const KComplex& k, int p, int n) {
  if (p + 1 > k.p_max()) throw ModuleError("K-complex homology needs p + 1 <= p_max");
  return chain_homology(k.d(p, n), k.d(p + 1, n));
}

KHomology kc_homology(const KComplex& k) {
  KHomology out;
  for (int p = 0; p + 1 <= k.p_max(); ++p) {
    Degree h;
    bool edge = false;
    for (int n = p; n <= k.n_max(); ++n) {
      HomologySpot s{p, n, kc_homology(k, p, n)};
      if (!s.group.is_zero()) {
        h = n;
        edge = n == k.n_max();
      }
      out.spots.push_back(std::move(s));
    }
    out.h.push_back(h);
    out.reaches_window_edge.push_back(edge);
  }
  return out;
}

namespace {

std::string spot(int p, int n, std::size_t col) {
  return "p = " + std::to_string(p) + ", n = " + std::to_string(n) + ", basis " + std::to_string(col);
}

}  // namespace

Check verify_d_squared(const KComplex& k) {
  Check c{"d_squared/" + k.module().name, "d o d = 0", Verdict::pass, ""};
  for (int p = 2; p <= k.p_max(); ++p)
    for (int n = p; n <= k.n_max(); ++n) {
      const IntMatrix prod = k.d(p - 1, n) * k.d(p, n);
      for (std::size_t col = 0; col < prod.cols(); ++col)
        if (!prod.column(col).empty()) {
          c.verdict = Verdict::fail;
          c.witness = spot(p, n, col);
          return c;
        }
    }
  return c;
}

Check homotopy_check(const KComplex& k) {
  Check c{"homotopy", "S_(g,h) d + d S_(g,h) = right multiplication by [[g,h]]", Verdict::pass, ""};
  const std::size_t g = k.module().ring->group().order();
  for (int p = 0; p <= k.p_max(); ++p)
    for (int n = p; n + 1 <= k.n_max(); ++n)
      for (std::size_t col = 0; col < k.dim(p, n); ++col) {
        const SparseVec dx = k.d_column(p, n, col);
        for (Element a = 0; a < g; ++a)
          for (Element b = 0; b < g; ++b) {
            SparseVec lhs;
            for (const auto& [r, v] : dx)
              for (const auto& [r2, v2] : k.homotopy(p - 1, n, r, a, b)) lhs.emplace_back(r2, v * v2);
            const SparseVec sx = k.homotopy(p, n, col, a, b);
            for (const auto& [r, v] : sx)
              for (const auto& [r2, v2] : k.d_column(p + 1, n + 1, r)) lhs.emplace_back(r2, v * v2);
            normalize(lhs);
            if (lhs != k.right_mult(p, n, col, a, b)) {
              c.verdict = Verdict::fail;
              c.witness = spot(p, n, col) + ", (g,h) = (" + std::to_string(a) + "," + std::to_string(b) + ")";
              return c;
            }
          }
      }
  return c;
}

Check annihilation_check(const KComplex& k) {
  Check c{"annihilation", "H_p(K(R)) [[g,h]] = 0", Verdict::pass, ""};
  const std::size_t g = k.module().ring->group().order();
  for (int p = 0; p + 1 <= k.p_max(); ++p)
    for (int n = p; n + 1 <= k.n_max(); ++n) {
      std::vector<SparseVec> cycles;
      if (p == 0) {
        for (std::size_t col = 0; col < k.dim(0, n); ++col) cycles.push_back({{static_cast<std::uint32_t>(col), Integer(1)}});
      } else {
        LatticeEchelon e(k.dim(p - 1, n), true);
        e.insert_columns(k.d(p, n));
        cycles = e.kernel();
      }
      LatticeEchelon boundaries(k.dim(p, n + 1));
      boundaries.insert_columns(k.d(p + 1, n + 1));
      for (std::size_t z = 0; z < cycles.size(); ++z)
        for (Element a = 0; a < g; ++a)
          for (Element b = 0; b < g; ++b) {
            SparseVec img;
            for (const auto& [col, v] : cycles[z])
              for (const auto& [r, v2] : k.right_mult(p, n, col, a, b)) img.emplace_back(r, v * v2);
            normalize(img);
            if (!boundaries.contains(img)) {
              c.verdict = Verdict::fail;
              c.witness = "p = " + std::to_string(p) + ", n = " + std::to_string(n) + ", cycle " + std::to_string(z) +
                          ", (g,h) = (" + std::to_string(a) + "," + std::to_string(b) + ")";
              return c;
            }
          }
    }
  return c;
}

Check u_commutes_check(const KComplex& k) {
  Check c{"u_commutes/" + k.module().name, "d U = U d", Verdict::pass, ""};
  for (int p = 1; p <= k.p_max(); ++p)
    for (int n = p; n + 1 <= k.n_max(); ++n)
      for (std::size_t col = 0; col < k.dim(p, n); ++col) {
        const SparseVec du = k.d(p, n + 1).apply(k.u_column(p, n, col));
        SparseVec ud;
        for (const auto& [r, v] : k.d(p, n).column(col))
          for (const auto& [r2, v2] : k.u_column(p - 1, n, r)) ud.emplace_back(r2, v * v2);
        normalize(ud);
        if (du != ud) {
          c.verdict = Verdict::fail;
          c.witness = spot(p, n, col);
          return c;
        }
      }
  return c;
}

namespace {

// U must be bijective on R_n for every observed n in [from, n_max - 1].
Check u_iso_from(std::string name, std::string anchor, Degree from, const StabilityProfile& prof, int n_max) {
  Check c{std::move(name), std::move(anchor), Verdict::pass, ""};
  const int start = from ? std::max(0, *from) : 0;
  int checked = 0;
  for (int n = start; n + 1 <= n_max; ++n) {
    ++checked;
    if (!prof.u_bijective(n)) {
      c.verdict = prof.stable_within_window ? Verdict::fail : Verdict::inconclusive;
      c.witness = "U not bijective at n = " + std::to_string(n);
      return c;
    }
  }
  if (!prof.stable_within_window) {
    c.verdict = Verdict::inconclusive;
    c.witness = "A(R) not certified by the window";
  } else if (!checked) {
    c.witness = "vacuous: threshold " + std::to_string(start) + " lies beyond the window";
  }
  return c;
}

}  // namespace

std::vector<Check> bound_checks(const StabilityProfile& prof, const KHomology& hom, int n_max) {
  std::vector<Check> out;
  {
    Check c{"h_p_bound", "h_p(R) <= p + A(R) + 1", Verdict::pass, ""};
    std::ostringstream seen;
    for (std::size_t p = 0; p < hom.h.size(); ++p) {
      const int bound = static_cast<int>(p) + prof.a + 1;
      seen << (p ? ", " : "") << "h_" << p << " = " << deg_to_string(hom.h[p]);
      if (hom.reaches_window_edge[p]) seen << " (window edge)";
      if (!deg_le(hom.h[p], bound)) {
        c.verdict = combine(c.verdict, prof.stable_within_window ? Verdict::fail : Verdict::inconclusive);
        seen << " > " << bound;
      }
    }
    if (c.verdict == Verdict::pass && !prof.stable_within_window) c.verdict = Verdict::inconclusive;
    c.witness = seen.str();
    out.push_back(std::move(c));
  }
  out.push_back(u_iso_from("u_iso_above_A", "U: R_n -> R_{n+1} bijective for n >= A(R) + 1", prof.a + 1, prof, n_max));
  if (hom.h.size() >= 2) {
    const Degree t = deg_add(deg_max(hom.h[0], hom.h[1]), 5 * prof.a + 1);
    out.push_back(u_iso_from("u_iso_above_h01", "U: R_n -> R_{n+1} iso for n >= max(h_0, h_1) + 5A(R) + 1", t, prof, n_max));
  } else {
    out.push_back({"u_iso_above_h01", "U: R_n -> R_{n+1} iso for n >= max(h_0, h_1) + 5A(R) + 1", Verdict::inconclusive,
                   "h_1 needs p_max >= 2"});
  }
  out.push_back(u_iso_from("u_iso_q0_threshold", "U: R_n -> R_{n+1} iso for n >= A~(R) + 6A(R) + 2",
                           prof.a_tilde + 6 * prof.a + 2, prof, n_max));
  return out;
}

}  // namespace stabring
