#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "stabring/free_group.hpp"
#include "stabring/group.hpp"
#include "stabring/zlinalg.hpp"

namespace stabring {

/// Normalized bar complex in degrees 1..3 and its low homology.
struct BarHomology {
  IntMatrix d2;
  IntMatrix d3;
  HomologyGroup h1;
  HomologyGroup h2;
};

/// |G| <= cap because C_3 has (|G|-1)^3 generators.
BarHomology bar_homology(const FiniteGroup& group, std::size_t cap = 12);

/// Invariant factors of G/[G,G] read off from element-order counts of the
/// quotient, without any linear algebra.
std::vector<Integer> abelianization_invariants(const FiniteGroup& group);

/// Commutator subgroup [G,G] as a sorted element list.
std::vector<Element> commutator_subgroup(const FiniteGroup& group);

struct SubgroupContribution {
  std::size_t order = 0;
  std::size_t schur_order = 0;
  std::size_t commutator_order = 0;
};

struct StableCountPrediction {
  /// Sum over H <= G of |H_2(H)|: orbits with trivial boundary value.
  std::uint64_t closed = 0;
  /// Sum over H <= G of |H_2(H)| * |[H,H]|: all orbits, the boundary value
  /// ranging over [H,H].
  std::uint64_t bounded = 0;
  std::vector<SubgroupContribution> subgroups;
};

StableCountPrediction stable_count_prediction(const FiniteGroup& group, const SubgroupOptions& options = {});

/// Dense integer matrix, row-major.
struct SmallMatrix {
  std::size_t dim = 0;
  std::vector<long> entries;
  long at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
};

/// Transvections x -> x + w(x, v) v for v in {e_i} and {e_i + e_j, i < j},
/// w the standard symplectic form on Z^{2n} (w(e_{2k-1}, e_{2k}) = 1).
std::vector<SmallMatrix> transvection_generators(int genus);
bool preserves_symplectic_form(const SmallMatrix& m);

/// Orbits of G^{2n} (G abelian) under the transvection family acting on
/// tuples viewed as homomorphisms Z^{2n} -> G.
std::size_t sp_orbit_count(const FiniteGroup& group, int genus, std::uint64_t state_cap = 1u << 24);

struct ModularImage {
  int prime = 0;
  std::uint64_t generated_order = 0;
  std::uint64_t symplectic_order = 0;
  bool capped = false;
};

/// Order of the group generated by the abelianized moves modulo p, next to
/// |Sp(2n, F_p)|.
ModularImage move_image_mod_p(const std::vector<MarkedAutomorphism>& moves, int genus, int prime,
                              std::uint64_t cap = 2'000'000);

nlohmann::json homology_json(const HomologyGroup& h);

}  // namespace stabring
