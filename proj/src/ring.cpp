#include "stabring/ring.hpp"

#include <algorithm>

#include "stabring/error.hpp"

namespace stabring {

nlohmann::json StabilityProfile::to_json() const {
  nlohmann::json j;
  j["counts"] = counts;
  j["u_injective"] = u_injective;
  j["u_surjective"] = u_surjective;
  j["deg_kernel"] = deg_kernel ? nlohmann::json(*deg_kernel) : nlohmann::json(nullptr);
  j["deg_cokernel"] = deg_cokernel;
  j["deg_u"] = deg_u;
  j["A"] = a;
  j["A_tilde"] = a_tilde;
  j["stable_within_window"] = stable_within_window;
  j["bijective_from"] = bijective_from ? nlohmann::json(*bijective_from) : nlohmann::json(nullptr);
  return j;
}

OrbitTable degree_table(const FiniteGroup& group, const MoveSet& moves, const RingBuildOptions& options,
                        DegreeBuildInfo& info) {
  const int n = moves.genus;
  info.moves = moves.automorphisms.size();
  info.moves_hash = moves.hash;
  info.from_cache = false;
  std::filesystem::path file;
  if (options.cache_dir) {
    file = *options.cache_dir / cache_file_name(group.hash(), moves.hash, n);
    if (std::filesystem::exists(file)) {
      OrbitTable t = cache_load(file, group.hash(), moves.hash);
      if (t.n != n || t.group_order != group.order()) throw CacheError("orbit cache: header does not match request");
      info.from_cache = true;
      return t;
    }
  }
  OrbitTable t = enumerate_orbits(group, n, moves.compile(group), moves.hash, options.orbit);
  if (options.cache_dir) cache_store(t, file);
  return t;
}

GradedRing GradedRing::build(const FiniteGroup& group, int n_max, const RingBuildOptions& options) {
  if (n_max < 0) throw Error("ring: negative top degree");
  std::vector<OrbitTable> tables;
  std::vector<DegreeBuildInfo> info(n_max + 1);
  for (int n = 0; n <= n_max; ++n) tables.push_back(degree_table(group, MoveSet::build(n, options.depth), options, info[n]));
  return from_tables(group, std::move(tables), std::move(info));
}

GradedRing GradedRing::from_tables(const FiniteGroup& group, std::vector<OrbitTable> tables,
                                   std::vector<DegreeBuildInfo> info) {
  GradedRing r;
  r.group_ = std::make_shared<const FiniteGroup>(group);
  for (std::size_t n = 0; n < tables.size(); ++n) {
    if (tables[n].n != static_cast<int>(n) || tables[n].group_order != group.order())
      throw Error("ring: orbit table does not match its degree or group");
  }
  r.tables_ = std::move(tables);
  r.info_ = std::move(info);
  r.info_.resize(r.tables_.size());
  r.finish();
  return r;
}

void GradedRing::finish() {
  const std::size_t g = group_->order();
  const int top = n_max();
  power_.assign(top + 2, 1);
  for (int n = 1; n <= top + 1; ++n) power_[n] = power_[n - 1] * g * g;
  beta_.resize(top + 1);
  for (int n = 0; n <= top; ++n) {
    beta_[n].resize(basis_size(n));
    for (std::size_t j = 0; j < basis_size(n); ++j) beta_[n][j] = evaluate_boundary(rep(n, j), *group_);
  }
  // Prepending (1,1) leaves the rank unchanged.
  u_map_.resize(top);
  for (int n = 0; n < top; ++n) {
    u_map_[n].resize(basis_size(n));
    for (std::size_t j = 0; j < basis_size(n); ++j) u_map_[n][j] = tables_[n + 1].orbit_of(rank_of_rep(n, j));
  }
}

std::vector<Element> GradedRing::rep(int n, std::size_t j) const {
  return TupleCodec(group_->order(), 2 * n).decode(tables_.at(n).reps.at(j));
}

std::size_t GradedRing::class_of(std::span<const Element> tuple) const {
  if (tuple.size() % 2) throw Error("ring: odd tuple length");
  const int n = static_cast<int>(tuple.size() / 2);
  if (n > n_max()) throw Error("ring: degree " + std::to_string(n) + " exceeds the computed window");
  return tables_[n].orbit_of(TupleCodec(group_->order(), 2 * n).encode(tuple));
}

std::size_t GradedRing::pair_class(Element a, Element b) const {
  if (n_max() < 1) throw Error("ring: degree 1 not computed");
  return tables_[1].orbit_of(a * group_->order() + b);
}

std::size_t GradedRing::left_pair(Element a, Element b, int n, std::size_t j) const {
  if (n + 1 > n_max()) throw Error("ring: product degree exceeds the computed window");
  const std::uint64_t head = a * group_->order() + b;
  return tables_[n + 1].orbit_of(head * power_[n] + rank_of_rep(n, j));
}

std::size_t GradedRing::right_pair(int n, std::size_t j, Element a, Element b) const {
  if (n + 1 > n_max()) throw Error("ring: product degree exceeds the computed window");
  const std::uint64_t tail = a * group_->order() + b;
  return tables_[n + 1].orbit_of(rank_of_rep(n, j) * power_[1] + tail);
}

std::size_t GradedRing::product(int m, std::size_t i, int n, std::size_t j) const {
  if (m + n > n_max()) throw Error("ring: product degree exceeds the computed window");
  return tables_[m + n].orbit_of(rank_of_rep(m, i) * power_[n] + rank_of_rep(n, j));
}

RingElement GradedRing::basis_element(int n, std::size_t j) const {
  RingElement e{n, std::vector<Integer>(basis_size(n), 0)};
  e.coeffs.at(j) = 1;
  return e;
}

RingElement GradedRing::multiply(const RingElement& x, const RingElement& y) const {
  if (x.coeffs.size() != basis_size(x.degree) || y.coeffs.size() != basis_size(y.degree))
    throw Error("ring: coefficient vector does not match the basis");
  const int d = x.degree + y.degree;
  if (d > n_max()) throw Error("ring: product degree exceeds the computed window");
  RingElement z{d, std::vector<Integer>(basis_size(d), 0)};
  for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
    if (x.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < y.coeffs.size(); ++j) {
      if (y.coeffs[j] == 0) continue;
      z.coeffs[product(x.degree, i, y.degree, j)] += x.coeffs[i] * y.coeffs[j];
    }
  }
  return z;
}

RingElement GradedRing::apply_U(const RingElement& x) const {
  if (x.degree >= n_max()) throw Error("ring: U would leave the computed window");
  if (x.coeffs.size() != basis_size(x.degree)) throw Error("ring: coefficient vector does not match the basis");
  RingElement z{x.degree + 1, std::vector<Integer>(basis_size(x.degree + 1), 0)};
  const auto& u = u_map_[x.degree];
  for (std::size_t j = 0; j < x.coeffs.size(); ++j) z.coeffs[u[j]] += x.coeffs[j];
  return z;
}

StabilityProfile GradedRing::stability_profile() const {
  StabilityProfile p;
  const int top = n_max();
  for (int n = 0; n <= top; ++n) p.counts.push_back(basis_size(n));
  for (int n = 0; n < top; ++n) {
    std::vector<bool> hit(basis_size(n + 1), false);
    bool inj = true;
    for (auto c : u_map_[n]) {
      if (hit[c]) inj = false;
      hit[c] = true;
    }
    bool sur = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    p.u_injective.push_back(inj);
    p.u_surjective.push_back(sur);
    if (!inj) p.deg_kernel = n;
    if (!sur) p.deg_cokernel = n + 1;
  }
  p.a = std::max(p.deg_kernel.value_or(0), p.deg_cokernel);
  p.a_tilde = std::max({p.deg_u, p.a});
  if (top >= 1) {
    p.stable_within_window = p.counts[top - 1] == p.counts[top] && p.u_bijective(top - 1);
    for (int n = top - 1; n >= 0 && p.u_bijective(n); --n) p.bijective_from = n;
  } else {
    p.stable_within_window = false;
  }
  return p;
}

nlohmann::json GradedRing::summary_json() const {
  nlohmann::json j;
  j["n_max"] = n_max();
  nlohmann::json degrees = nlohmann::json::array();
  for (int n = 0; n <= n_max(); ++n) {
    nlohmann::json d;
    d["n"] = n;
    d["count"] = basis_size(n);
    d["moves"] = info_[n].moves;
    d["moves_hash"] = to_hex(info_[n].moves_hash);
    if (n < n_max()) d["u_map"] = u_map_[n];
    degrees.push_back(std::move(d));
  }
  j["degrees"] = std::move(degrees);
  j["profile"] = stability_profile().to_json();
  return j;
}

}  // namespace stabring
