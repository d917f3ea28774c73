#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "stabring/degree.hpp"
#include "stabring/free_group.hpp"
#include "stabring/group.hpp"
#include "stabring/orbits.hpp"
#include "stabring/zlinalg.hpp"

namespace stabring {

/// An element of R_n as a coefficient vector over the orbit basis.
struct RingElement {
  int degree = 0;
  std::vector<Integer> coeffs;

  friend bool operator==(const RingElement&, const RingElement&) = default;
};

struct StabilityProfile {
  std::vector<std::size_t> counts;
  /// Per n < n_max: U_n: R_n -> R_{n+1} injective / surjective on bases.
  std::vector<bool> u_injective;
  std::vector<bool> u_surjective;
  /// Last degree where U has a kernel; nullopt if none in window.
  Degree deg_kernel;
  /// Last degree n where R_n is not hit by U (R_0 always counts).
  int deg_cokernel = 0;
  int deg_u = 1;
  int a = 0;
  int a_tilde = 1;
  /// counts agree on the top two degrees and U is a bijection between them.
  bool stable_within_window = false;
  /// Least n0 with U_n bijective for every n0 <= n < n_max.
  std::optional<int> bijective_from;

  bool u_bijective(int n) const { return u_injective.at(n) && u_surjective.at(n); }
  nlohmann::json to_json() const;
};

struct RingBuildOptions {
  int depth = 2;
  OrbitOptions orbit;
  std::optional<std::filesystem::path> cache_dir;
};

/// Per-degree provenance of the orbit tables.
struct DegreeBuildInfo {
  std::size_t moves = 0;
  Digest moves_hash{};
  bool from_cache = false;
};

/// The genus-n orbit table for a move set, read from the cache directory
/// when a matching file exists and stored there otherwise.
OrbitTable degree_table(const FiniteGroup& group, const MoveSet& moves, const RingBuildOptions& options,
                        DegreeBuildInfo& info);

/// R = sum_n R_n, R_n free on the orbits of G^{2n}; product by concatenation
/// and U = left multiplication by [[1,1]].
class GradedRing {
 public:
  static GradedRing build(const FiniteGroup& group, int n_max, const RingBuildOptions& options = {});
  /// tables[n] must be the genus-n table for every n <= n_max.
  static GradedRing from_tables(const FiniteGroup& group, std::vector<OrbitTable> tables,
                                std::vector<DegreeBuildInfo> info = {});

  int n_max() const { return static_cast<int>(tables_.size()) - 1; }
  const FiniteGroup& group() const { return *group_; }
  const OrbitTable& table(int n) const { return tables_.at(n); }
  const std::vector<DegreeBuildInfo>& build_info() const { return info_; }
  std::size_t basis_size(int n) const { return tables_.at(n).count(); }

  std::vector<Element> rep(int n, std::size_t j) const;
  /// Evaluated boundary of the class (orbit invariant).
  Element beta(int n, std::size_t j) const { return beta_.at(n).at(j); }
  std::size_t class_of(std::span<const Element> tuple) const;

  /// Basis index of [[a,b]] in R_1.
  std::size_t pair_class(Element a, Element b) const;
  /// [[a,b]] * w and w * [[a,b]] for w the j-th class of R_n.
  std::size_t left_pair(Element a, Element b, int n, std::size_t j) const;
  std::size_t right_pair(int n, std::size_t j, Element a, Element b) const;
  /// Product of basis classes.
  std::size_t product(int m, std::size_t i, int n, std::size_t j) const;
  /// U on basis classes: R_n -> R_{n+1}.
  const std::vector<std::uint32_t>& u_map(int n) const { return u_map_.at(n); }

  RingElement basis_element(int n, std::size_t j) const;
  RingElement multiply(const RingElement& x, const RingElement& y) const;
  RingElement apply_U(const RingElement& x) const;

  StabilityProfile stability_profile() const;
  nlohmann::json summary_json() const;

 private:
  GradedRing() = default;
  void finish();
  std::uint64_t rank_of_rep(int n, std::size_t j) const { return tables_[n].reps[j]; }

  std::shared_ptr<const FiniteGroup> group_;
  std::vector<OrbitTable> tables_;
  std::vector<DegreeBuildInfo> info_;
  std::vector<std::vector<Element>> beta_;
  std::vector<std::vector<std::uint32_t>> u_map_;
  std::vector<std::uint64_t> power_;
};

}  // namespace stabring
