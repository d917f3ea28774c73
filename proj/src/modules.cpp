#include "stabring/modules.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "stabring/error.hpp"

namespace stabring {

std::size_t GradedModule::gens(int n) const {
  if (n < 0) return 0;
  if (vanishes_above && n > *vanishes_above) return 0;
  if (n > top) throw ModuleError(name + ": degree " + std::to_string(n) + " lies beyond the window");
  return comp[n].gens;
}

const IntMatrix& GradedModule::action(int n, Element a, Element b) const {
  if (n < 0 || n >= static_cast<int>(act.size()))
    throw ModuleError(name + ": action out of degree " + std::to_string(n) + " lies beyond the window");
  return act[n].at(a * ring->group().order() + b);
}

IntMatrix GradedModule::tuple_action(std::span<const Element> tuple, int n) const {
  const int len = static_cast<int>(tuple.size() / 2);
  IntMatrix result = IntMatrix::identity(gens(n));
  if (len == 0) return result;
  if (side == Side::left) {
    // [[a_1,b_1]]([[a_2,b_2]](... m)): the last pair acts first.
    for (int k = len - 1, d = n; k >= 0; --k, ++d) result = action(d, tuple[2 * k], tuple[2 * k + 1]) * result;
  } else {
    for (int k = 0, d = n; k < len; ++k, ++d) result = action(d, tuple[2 * k], tuple[2 * k + 1]) * result;
  }
  return result;
}

IntMatrix GradedModule::class_action(int i, std::size_t j, int n) const {
  return tuple_action(ring->rep(i, j), n);
}

bool GradedModule::has_free_components() const {
  return std::all_of(comp.begin(), comp.end(), [](const ModuleComponent& c) { return c.relations.cols() == 0; });
}

Degree GradedModule::degree() const {
  Degree d;
  for (int n = 0; n <= top; ++n)
    if (!cokernel(comp[n].relations).is_zero()) d = n;
  return d;
}

namespace {

std::size_t pair_count(const GradedRing& ring) { return ring.group().order() * ring.group().order(); }

// Module spanned by a selection of ring classes; sel[n][c] is the generator
// index of class c or -1. In quotient mode unselected images vanish,
// otherwise they are an error (the selection must be closed).
GradedModule class_module(const GradedRing& ring, Side side, std::string name,
                          const std::vector<std::vector<long>>& sel, bool quotient) {
  GradedModule m;
  m.name = std::move(name);
  m.side = side;
  m.ring = &ring;
  m.top = ring.n_max();
  const std::size_t g = ring.group().order();
  m.generator_class.resize(m.top + 1);
  for (int n = 0; n <= m.top; ++n) {
    for (std::size_t c = 0; c < sel[n].size(); ++c)
      if (sel[n][c] >= 0) m.generator_class[n].push_back(c);
    m.comp.push_back({m.generator_class[n].size(), IntMatrix(m.generator_class[n].size(), 0)});
  }
  m.act.resize(m.top);
  for (int n = 0; n < m.top; ++n) {
    m.act[n].reserve(g * g);
    for (Element a = 0; a < g; ++a)
      for (Element b = 0; b < g; ++b) {
        std::vector<Triplet> t;
        for (std::size_t j = 0; j < m.generator_class[n].size(); ++j) {
          const std::size_t c = m.generator_class[n][j];
          const std::size_t img = side == Side::left ? ring.left_pair(a, b, n, c) : ring.right_pair(n, c, a, b);
          const long k = sel[n + 1][img];
          if (k < 0) {
            if (!quotient) throw ModuleError(m.name + ": class selection is not closed under the action");
            continue;
          }
          t.push_back({static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(j), 1});
        }
        m.act[n].push_back(IntMatrix::from_triplets(m.comp[n + 1].gens, m.comp[n].gens, std::move(t)));
      }
  }
  return m;
}

std::vector<std::vector<long>> select(const GradedRing& ring, const std::function<bool(int, std::size_t)>& keep) {
  std::vector<std::vector<long>> sel(ring.n_max() + 1);
  for (int n = 0; n <= ring.n_max(); ++n) {
    long k = 0;
    sel[n].assign(ring.basis_size(n), -1);
    for (std::size_t c = 0; c < ring.basis_size(n); ++c)
      if (keep(n, c)) sel[n][c] = k++;
  }
  return sel;
}

std::vector<std::vector<bool>> u_image_classes(const GradedRing& ring) {
  std::vector<std::vector<bool>> hit(ring.n_max() + 1);
  for (int n = 0; n <= ring.n_max(); ++n) hit[n].assign(ring.basis_size(n), false);
  for (int n = 0; n < ring.n_max(); ++n)
    for (auto c : ring.u_map(n)) hit[n + 1][c] = true;
  return hit;
}

const char* side_tag(Side s) { return s == Side::left ? "" : "_right"; }

}  // namespace

GradedModule regular_module(const GradedRing& ring, Side side) {
  return class_module(ring, side, std::string("R") + side_tag(side), select(ring, [](int, std::size_t) { return true; }),
                      false);
}

GradedModule bar_module(const GradedRing& ring, Side side) {
  const auto hit = u_image_classes(ring);
  return class_module(ring, side, std::string("Rbar") + side_tag(side),
                      select(ring, [&](int n, std::size_t c) { return !hit[n][c]; }), true);
}

GradedModule positive_part(const GradedRing& ring, Side side) {
  return class_module(ring, side, std::string("R_pos") + side_tag(side),
                      select(ring, [](int n, std::size_t) { return n > 0; }), false);
}

GradedModule u_image_module(const GradedRing& ring, Side side) {
  const auto hit = u_image_classes(ring);
  return class_module(ring, side, std::string("UR") + side_tag(side),
                      select(ring, [&](int n, std::size_t c) { return bool(hit[n][c]); }), false);
}

GradedModule trivial_module(const GradedRing& ring, Side side) {
  GradedModule m = class_module(ring, side, std::string("Z") + side_tag(side),
                                select(ring, [](int n, std::size_t) { return n == 0; }), true);
  m.vanishes_above = 0;
  return m;
}

GradedModule u_torsion_module(const GradedRing& ring, Side side) {
  if (ring.n_max() < 1) throw ModuleError("R[U]: needs n_max >= 1");
  GradedModule m;
  m.name = std::string("R[U]") + side_tag(side);
  m.side = side;
  m.ring = &ring;
  m.top = ring.n_max() - 1;
  // Kernel basis of U_n: c - (first class of its fiber), per fiber.
  std::vector<std::vector<long>> index(m.top + 1);
  std::vector<std::vector<std::size_t>> first(m.top + 1);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> basis(m.top + 1);
  for (int n = 0; n <= m.top; ++n) {
    const auto& u = ring.u_map(n);
    std::map<std::uint32_t, std::size_t> head;
    index[n].assign(ring.basis_size(n), -1);
    first[n].resize(ring.basis_size(n));
    for (std::size_t c = 0; c < u.size(); ++c) {
      auto [it, fresh] = head.emplace(u[c], c);
      first[n][c] = it->second;
      if (!fresh) {
        index[n][c] = static_cast<long>(basis[n].size());
        basis[n].emplace_back(c, it->second);
      }
    }
    m.comp.push_back({basis[n].size(), IntMatrix(basis[n].size(), 0)});
  }
  const std::size_t g = ring.group().order();
  m.act.resize(m.top);
  for (int n = 0; n < m.top; ++n)
    for (Element a = 0; a < g; ++a)
      for (Element b = 0; b < g; ++b) {
        std::vector<Triplet> t;
        for (std::size_t j = 0; j < basis[n].size(); ++j) {
          auto mult = [&](std::size_t c) {
            return side == Side::left ? ring.left_pair(a, b, n, c) : ring.right_pair(n, c, a, b);
          };
          std::map<std::size_t, long> x;
          x[mult(basis[n][j].first)] += 1;
          x[mult(basis[n][j].second)] -= 1;
          std::map<std::size_t, long> fiber_sum;
          for (auto [c, v] : x) {
            if (!v) continue;
            fiber_sum[first[n + 1][c]] += v;
            if (index[n + 1][c] >= 0) t.push_back({static_cast<std::uint32_t>(index[n + 1][c]), static_cast<std::uint32_t>(j), v});
          }
          for (auto [f, s] : fiber_sum)
            if (s) throw ModuleError("R[U]: action leaves the kernel of U");
        }
        m.act[n].push_back(IntMatrix::from_triplets(m.comp[n + 1].gens, m.comp[n].gens, std::move(t)));
      }
  return m;
}

GradedModule shift_module(const GradedModule& src, int p) {
  if (p < 0) throw ModuleError("shift: negative shift");
  GradedModule m;
  m.name = src.name + "[" + std::to_string(p) + "]";
  m.side = src.side;
  m.ring = src.ring;
  m.top = std::min(src.top + p, src.ring->n_max());
  if (src.vanishes_above) m.vanishes_above = *src.vanishes_above + p;
  const std::size_t pairs = pair_count(*src.ring);
  for (int n = 0; n <= m.top; ++n)
    m.comp.push_back(n < p ? ModuleComponent{0, IntMatrix(0, 0)} : src.comp[n - p]);
  m.act.resize(m.top);
  for (int n = 0; n < m.top; ++n) {
    if (n >= p) {
      m.act[n] = src.act[n - p];
    } else {
      m.act[n].assign(pairs, IntMatrix(m.comp[n + 1].gens, 0));
    }
  }
  return m;
}

GradedModule truncate_module(const GradedModule& src, int k) {
  if (k < 0) throw ModuleError("truncate: negative degree");
  GradedModule m;
  m.name = src.name + "_le" + std::to_string(k);
  m.side = src.side;
  m.ring = src.ring;
  m.top = k <= src.top ? src.ring->n_max() : src.top;
  m.vanishes_above = src.vanishes_above ? std::min(k, *src.vanishes_above) : k;
  const std::size_t pairs = pair_count(*src.ring);
  for (int n = 0; n <= m.top; ++n)
    m.comp.push_back(n <= k ? src.comp[n] : ModuleComponent{0, IntMatrix(0, 0)});
  m.act.resize(m.top);
  for (int n = 0; n < m.top; ++n) {
    if (n + 1 <= k) {
      m.act[n] = src.act[n];
    } else {
      m.act[n].assign(pairs, IntMatrix(0, m.comp[n].gens));
    }
  }
  return m;
}

GradedModule quotient_u_module(const GradedModule& src) {
  GradedModule m = src;
  m.name = src.name + "/U";
  m.generator_class.clear();
  for (int n = 1; n <= m.top; ++n) m.comp[n].relations = src.comp[n].relations.hconcat(src.u_action(n - 1));
  return m;
}

ModuleRecipe ModuleRecipe::shift(const ModuleRecipe& b, int p) {
  return {Kind::shift, b.side, p, std::make_shared<const ModuleRecipe>(b)};
}
ModuleRecipe ModuleRecipe::truncate(const ModuleRecipe& b, int k) {
  return {Kind::truncate, b.side, k, std::make_shared<const ModuleRecipe>(b)};
}
ModuleRecipe ModuleRecipe::quotient_u(const ModuleRecipe& b) {
  return {Kind::quotient_u, b.side, 0, std::make_shared<const ModuleRecipe>(b)};
}

std::string ModuleRecipe::describe() const {
  const std::string s = side == Side::left ? "" : "_right";
  switch (kind) {
    case Kind::regular: return "R" + s;
    case Kind::bar: return "Rbar" + s;
    case Kind::u_torsion: return "R[U]" + s;
    case Kind::positive: return "R_pos" + s;
    case Kind::u_image: return "UR" + s;
    case Kind::trivial: return "Z" + s;
    case Kind::shift: return base->describe() + "[" + std::to_string(param) + "]";
    case Kind::truncate: return base->describe() + "_le" + std::to_string(param);
    case Kind::quotient_u: return base->describe() + "/U";
  }
  return "?";
}

GradedModule derive_module(const GradedRing& ring, const ModuleRecipe& r) {
  GradedModule m;
  switch (r.kind) {
    case ModuleRecipe::Kind::regular: m = regular_module(ring, r.side); break;
    case ModuleRecipe::Kind::bar: m = bar_module(ring, r.side); break;
    case ModuleRecipe::Kind::u_torsion: m = u_torsion_module(ring, r.side); break;
    case ModuleRecipe::Kind::positive: m = positive_part(ring, r.side); break;
    case ModuleRecipe::Kind::u_image: m = u_image_module(ring, r.side); break;
    case ModuleRecipe::Kind::trivial: m = trivial_module(ring, r.side); break;
    case ModuleRecipe::Kind::shift: m = shift_module(derive_module(ring, *r.base), r.param); break;
    case ModuleRecipe::Kind::truncate: m = truncate_module(derive_module(ring, *r.base), r.param); break;
    case ModuleRecipe::Kind::quotient_u: m = quotient_u_module(derive_module(ring, *r.base)); break;
  }
  m.name = r.describe();
  if (auto bad = verify_module(m)) throw ModuleError(m.name + ": " + *bad);
  return m;
}

namespace {

bool columns_in_lattice(const IntMatrix& x, const LatticeEchelon& lattice) {
  for (std::size_t j = 0; j < x.cols(); ++j)
    if (!lattice.contains(x.column(j))) return false;
  return true;
}

LatticeEchelon relation_lattice(const GradedModule& m, int n) {
  LatticeEchelon e(m.comp[n].gens);
  e.insert_columns(m.comp[n].relations);
  return e;
}

}  // namespace

std::optional<std::string> verify_module(const GradedModule& m) {
  if (!m.ring) return "no ring attached";
  const GradedRing& ring = *m.ring;
  const std::size_t g = ring.group().order();
  if (m.top < 0 || m.top > ring.n_max()) return "top degree outside the ring window";
  if (m.comp.size() != static_cast<std::size_t>(m.top + 1)) return "component count does not match top";
  if (m.act.size() != static_cast<std::size_t>(m.top)) return "action count does not match top";
  for (int n = 0; n <= m.top; ++n)
    if (m.comp[n].relations.rows() != m.comp[n].gens) return "relation rows mismatch in degree " + std::to_string(n);
  for (int n = 0; n < m.top; ++n) {
    if (m.act[n].size() != g * g) return "action table size mismatch in degree " + std::to_string(n);
    const LatticeEchelon rel = relation_lattice(m, n + 1);
    for (std::size_t p = 0; p < g * g; ++p) {
      const IntMatrix& a = m.act[n][p];
      if (a.rows() != m.comp[n + 1].gens || a.cols() != m.comp[n].gens)
        return "action shape mismatch in degree " + std::to_string(n);
      if (!columns_in_lattice(a * m.comp[n].relations, rel))
        return "action does not respect relations in degree " + std::to_string(n);
    }
    // Pairs in the same class of R_1 act identically.
    for (Element a = 0; a < g; ++a)
      for (Element b = 0; b < g; ++b) {
        const auto rep = ring.rep(1, ring.pair_class(a, b));
        if (!columns_in_lattice(m.action(n, a, b) - m.action(n, rep[0], rep[1]), rel))
          return "pair (" + std::to_string(a) + "," + std::to_string(b) + ") and its representative act differently in degree " +
                 std::to_string(n);
      }
  }
  // Length-2 tuples act as their canonical representative.
  if (ring.n_max() >= 2) {
    const TupleCodec codec(g, 4);
    for (int n = 0; n + 2 <= m.top; ++n) {
      const LatticeEchelon rel = relation_lattice(m, n + 2);
      std::map<std::size_t, IntMatrix> rep_action;
      for (std::uint64_t r = 0; r < codec.size(); ++r) {
        const auto t = codec.decode(r);
        const std::size_t c = ring.class_of(t);
        auto it = rep_action.find(c);
        if (it == rep_action.end()) it = rep_action.emplace(c, m.class_action(2, c, n)).first;
        if (!columns_in_lattice(m.tuple_action(t, n) - it->second, rel))
          return "tuple rank " + std::to_string(r) + " and its representative act differently in degree " + std::to_string(n);
      }
    }
  }
  return std::nullopt;
}

TensorDegree tensor_presentation(const GradedModule& nm, const GradedModule& mm, int n) {
  if (nm.side != Side::right || mm.side != Side::left) throw ModuleError("tensor: expects a right and a left module");
  if (n > std::min(nm.top, mm.top)) throw ModuleError("tensor: degree beyond the window");
  const std::size_t g = nm.ring->group().order();
  TensorDegree t;
  for (int i = 0; i <= n; ++i) {
    t.offset.push_back(t.gens);
    t.gens += nm.gens(i) * mm.gens(n - i);
  }
  auto idx = [&](int i, std::size_t x, std::size_t y) {
    return static_cast<std::uint32_t>(t.offset[i] + x * mm.gens(n - i) + y);
  };
  std::vector<Triplet> trip;
  std::uint32_t col = 0;
  for (int i = 0; i <= n; ++i) {
    const int k = n - i;
    const std::size_t gn = nm.gens(i), gm = mm.gens(k);
    if (!gn || !gm) continue;
    const IntMatrix& rn = nm.comp[i].relations;
    for (std::size_t r = 0; r < rn.cols(); ++r)
      for (std::size_t y = 0; y < gm; ++y, ++col)
        for (const auto& [x, v] : rn.column(r)) trip.push_back({idx(i, x, y), col, v});
    const IntMatrix& rm = mm.comp[k].relations;
    for (std::size_t r = 0; r < rm.cols(); ++r)
      for (std::size_t x = 0; x < gn; ++x, ++col)
        for (const auto& [y, v] : rm.column(r)) trip.push_back({idx(i, x, y), col, v});
  }
  // x [[a,b]] (x) y - x (x) [[a,b]] y, x in N_i, y in M_k, i + 1 + k = n.
  for (int i = 0; i + 1 <= n; ++i) {
    const int k = n - 1 - i;
    const std::size_t gn = nm.gens(i), gm = mm.gens(k);
    if (!gn || !gm) continue;
    for (std::size_t p = 0; p < g * g; ++p) {
      const Element a = static_cast<Element>(p / g), b = static_cast<Element>(p % g);
      const IntMatrix& rho = nm.action(i, a, b);
      const IntMatrix& lam = mm.action(k, a, b);
      for (std::size_t x = 0; x < gn; ++x)
        for (std::size_t y = 0; y < gm; ++y, ++col) {
          for (const auto& [x2, v] : rho.column(x)) trip.push_back({idx(i + 1, x2, y), col, v});
          for (const auto& [y2, v] : lam.column(y)) trip.push_back({idx(i, x, y2), col, -v});
        }
    }
  }
  t.relations = IntMatrix::from_triplets(t.gens, col, std::move(trip));
  return t;
}

Degree GradedGroup::degree() const {
  Degree d;
  for (std::size_t n = 0; n < groups.size(); ++n)
    if (!groups[n].is_zero()) d = static_cast<int>(n);
  return d;
}

nlohmann::json GradedGroup::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& h : groups) j.push_back(h.to_string());
  return j;
}

GradedGroup graded_tensor(const GradedModule& nm, const GradedModule& mm) {
  GradedGroup out;
  out.top = std::min(nm.top, mm.top);
  for (int n = 0; n <= out.top; ++n) out.groups.push_back(cokernel(tensor_presentation(nm, mm, n).relations));
  return out;
}

GradedGroup h0(const GradedModule& m) {
  GradedGroup out;
  out.top = m.top;
  const std::size_t g = m.ring->group().order();
  for (int n = 0; n <= m.top; ++n) {
    IntMatrix rel = m.comp[n].relations;
    if (n > 0)
      for (std::size_t p = 0; p < g * g; ++p) rel = rel.hconcat(m.act[n - 1][p]);
    out.groups.push_back(cokernel(rel));
  }
  return out;
}

namespace {

// (I (x)_R M)_n -> M_n, w (x) y -> w y, for I a right ideal of R given by
// its generator classes.
IntMatrix multiplication_map(const GradedModule& ideal, const GradedModule& m, int n, const TensorDegree& t) {
  std::vector<Triplet> trip;
  for (int i = 1; i <= n; ++i) {
    const int k = n - i;
    const std::size_t gm = m.gens(k);
    if (!gm) continue;
    for (std::size_t x = 0; x < ideal.gens(i); ++x) {
      const IntMatrix act = m.class_action(i, ideal.generator_class[i][x], k);
      for (std::size_t y = 0; y < gm; ++y)
        for (const auto& [r, v] : act.column(y))
          trip.push_back({r, static_cast<std::uint32_t>(t.offset[i] + x * gm + y), v});
    }
  }
  if (ideal.gens(0)) throw ModuleError("multiplication map: ideal has a degree-0 part");
  return IntMatrix::from_triplets(m.gens(n), t.gens, std::move(trip));
}

GradedGroup ideal_kernel(const GradedModule& ideal, const GradedModule& m) {
  if (m.side != Side::left) throw ModuleError("tor: expects a left module");
  GradedGroup out;
  out.top = std::min(ideal.top, m.top);
  for (int n = 0; n <= out.top; ++n) {
    const TensorDegree t = tensor_presentation(ideal, m, n);
    const IntMatrix beta = multiplication_map(ideal, m, n, t);
    out.groups.push_back(kernel_of_induced(beta, t.relations, m.comp[n].relations));
  }
  return out;
}

}  // namespace

GradedGroup h1(const GradedModule& m) { return ideal_kernel(positive_part(*m.ring, Side::right), m); }

GradedGroup tor1_bar(const GradedModule& m) { return ideal_kernel(u_image_module(*m.ring, Side::right), m); }

GradedGroup u_cokernel(const GradedModule& m) {
  GradedGroup out;
  out.top = m.top;
  for (int n = 0; n <= m.top; ++n) {
    IntMatrix rel = m.comp[n].relations;
    if (n > 0) rel = rel.hconcat(m.act[n - 1][0]);
    out.groups.push_back(cokernel(rel));
  }
  return out;
}

GradedGroup u_kernel(const GradedModule& m) {
  GradedGroup out;
  out.top = m.top - 1;
  for (int n = 0; n < m.top; ++n)
    out.groups.push_back(kernel_of_induced(m.act[n][0], m.comp[n].relations, m.comp[n + 1].relations));
  return out;
}

nlohmann::json DeltaBounds::to_json() const {
  return {{"deg_h0", deg_to_string(deg_h0)},         {"deg_h1", deg_to_string(deg_h1)},
          {"deg_M_mod_UM", deg_to_string(deg_u_coker)}, {"deg_M_U", deg_to_string(deg_u_ker)},
          {"deg_tor1", deg_to_string(deg_tor1)},     {"delta", deg_to_string(delta)},
          {"A_M", deg_to_string(a_m)},               {"a_delta_check", a_delta.to_json()}};
}

DeltaBounds delta_and_bounds(const GradedModule& m, const StabilityProfile& profile) {
  DeltaBounds d;
  d.deg_h0 = h0(m).degree();
  d.deg_h1 = h1(m).degree();
  d.deg_u_coker = u_cokernel(m).degree();
  d.deg_u_ker = u_kernel(m).degree();
  d.deg_tor1 = tor1_bar(m).degree();
  d.delta = deg_max(d.deg_u_coker, d.deg_tor1);
  d.a_m = deg_max(d.deg_u_ker, d.deg_u_coker);
  d.a_delta.name = "a_delta_bound/" + m.name;
  d.a_delta.anchor = "A(M) <= delta(M) + A(R)";
  const Degree rhs = deg_add(d.delta, profile.a);
  if (deg_le(d.a_m, rhs)) {
    d.a_delta.verdict = Verdict::pass;
  } else {
    // delta(M) and A(R) are only lower bounds inside a finite window.
    d.a_delta.verdict = Verdict::inconclusive;
    d.a_delta.witness = "A(M) = " + deg_to_string(d.a_m) + " > " + deg_to_string(rhs) + " within window";
  }
  return d;
}

Check generation_check(const GradedModule& m) {
  Check c{"generation_degree/" + m.name, "deg H_0(M) <= a  <=>  M generated in degrees <= a", Verdict::pass, ""};
  const Degree dh0 = h0(m).degree();
  const GradedRing& ring = *m.ring;
  for (int a = 0; a <= m.top; ++a) {
    bool generated = true;
    for (int n = a + 1; n <= m.top && generated; ++n) {
      IntMatrix span = m.comp[n].relations;
      for (int j = 0; j <= a; ++j) {
        if (!m.gens(j)) continue;
        for (std::size_t w = 0; w < ring.basis_size(n - j); ++w) span = span.hconcat(m.class_action(n - j, w, j));
      }
      generated = cokernel(span).is_zero();
    }
    if (deg_le(dh0, a) != generated) {
      c.verdict = Verdict::fail;
      c.witness = "a = " + std::to_string(a) + ": deg H_0 = " + deg_to_string(dh0) +
                  (generated ? ", generated" : ", not generated");
      return c;
    }
  }
  return c;
}

Check tensor_degree_check(const GradedModule& nm, const GradedModule& mm) {
  Check c{"tensor_degree/" + nm.name + "(x)" + mm.name, "deg(N (x) M) <= min(deg N + deg H_0(M), deg H_0(N) + deg M)",
          Verdict::pass, ""};
  const Degree lhs = graded_tensor(nm, mm).degree();
  const Degree rhs = deg_min(deg_add(nm.degree(), h0(mm).degree()), deg_add(h0(nm).degree(), mm.degree()));
  if (deg_le(lhs, rhs)) return c;
  c.verdict = nm.degree_certified() && mm.degree_certified() ? Verdict::fail : Verdict::inconclusive;
  c.witness = "deg(N (x) M) = " + deg_to_string(lhs) + " > " + deg_to_string(rhs);
  return c;
}

}  // namespace stabring
