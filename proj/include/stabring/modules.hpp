#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stabring/degree.hpp"
#include "stabring/ring.hpp"
#include "stabring/verdict.hpp"
#include "stabring/zlinalg.hpp"

namespace stabring {

enum class Side { left, right };

/// M_n = Z^gens / im(relations).
struct ModuleComponent {
  std::size_t gens = 0;
  IntMatrix relations;
};

/// A graded R-module presented degreewise. For a left module act[n][p] is
/// the matrix of m -> [[a,b]] m from M_n to M_{n+1}, for a right module of
/// m -> m [[a,b]]; p = a * |G| + b.
struct GradedModule {
  std::string name;
  Side side = Side::left;
  const GradedRing* ring = nullptr;
  /// Components 0..top are exact.
  int top = 0;
  /// Set when every component above this degree is zero.
  std::optional<int> vanishes_above;
  std::vector<ModuleComponent> comp;
  std::vector<std::vector<IntMatrix>> act;
  /// For modules spanned by classes of R (R, R_{>0}, U(R), R/UR, Z): the
  /// class of R_n behind each generator of M_n.
  std::vector<std::vector<std::size_t>> generator_class;

  std::size_t gens(int n) const;
  const IntMatrix& relations(int n) const { return comp.at(n).relations; }
  const IntMatrix& action(int n, Element a, Element b) const;
  const IntMatrix& u_action(int n) const { return action(n, 0, 0); }
  /// Action of the j-th class of R_i on M_n, M_n -> M_{n+i}.
  IntMatrix class_action(int i, std::size_t j, int n) const;
  /// Action of an arbitrary tuple (a_1, b_1, ..., a_i, b_i).
  IntMatrix tuple_action(std::span<const Element> tuple, int n) const;
  bool has_free_components() const;
  /// deg M, exact when vanishes_above lies in the window.
  Degree degree() const;
  bool degree_certified() const { return vanishes_above && *vanishes_above <= top; }
};

/// Recipes for derived modules.
struct ModuleRecipe {
  enum class Kind { regular, bar, u_torsion, shift, truncate, quotient_u, positive, u_image, trivial };
  Kind kind = Kind::regular;
  Side side = Side::left;
  int param = 0;
  std::shared_ptr<const ModuleRecipe> base;

  static ModuleRecipe make(Kind k, Side s = Side::left) { return {k, s, 0, nullptr}; }
  static ModuleRecipe shift(const ModuleRecipe& b, int p);
  static ModuleRecipe truncate(const ModuleRecipe& b, int k);
  static ModuleRecipe quotient_u(const ModuleRecipe& b);
  std::string describe() const;
};

/// Builds the module and verifies its invariants (throws ModuleError).
GradedModule derive_module(const GradedRing& ring, const ModuleRecipe& recipe);

GradedModule regular_module(const GradedRing& ring, Side side = Side::left);
/// R/UR, free on the classes outside the image of U.
GradedModule bar_module(const GradedRing& ring, Side side = Side::left);
/// ker(U: R -> R); exact up to n_max - 1.
GradedModule u_torsion_module(const GradedRing& ring, Side side = Side::left);
GradedModule positive_part(const GradedRing& ring, Side side = Side::right);
/// U(R) = [[1,1]] R.
GradedModule u_image_module(const GradedRing& ring, Side side = Side::right);
/// Z = R / R_{>0}.
GradedModule trivial_module(const GradedRing& ring, Side side = Side::right);
/// (M[p])_n = M_{n-p}.
GradedModule shift_module(const GradedModule& m, int p);
/// M_{<=k}.
GradedModule truncate_module(const GradedModule& m, int k);
/// M / U M.
GradedModule quotient_u_module(const GradedModule& m);

/// Returns a description of the first violated module invariant: shapes,
/// relation compatibility, and consistency of composite actions along
/// tuples of length 1 and 2 with the canonical representatives.
std::optional<std::string> verify_module(const GradedModule& m);

/// Presentation of (N (x)_R M)_n for N a right and M a left module.
struct TensorDegree {
  std::size_t gens = 0;
  IntMatrix relations;
  /// offset[i] is the first generator of N_i (x) M_{n-i}.
  std::vector<std::size_t> offset;
};

TensorDegree tensor_presentation(const GradedModule& n_mod, const GradedModule& m_mod, int n);

struct GradedGroup {
  int top = 0;
  std::vector<HomologyGroup> groups;
  Degree degree() const;
  nlohmann::json to_json() const;
};

GradedGroup graded_tensor(const GradedModule& n_mod, const GradedModule& m_mod);
/// M / R_{>0} M.
GradedGroup h0(const GradedModule& m);
/// ker(R_{>0} (x)_R M -> M), left modules only.
GradedGroup h1(const GradedModule& m);
/// M / U M and ker(U: M_n -> M_{n+1}).
GradedGroup u_cokernel(const GradedModule& m);
GradedGroup u_kernel(const GradedModule& m);
/// ker(U(R) (x)_R M -> M).
GradedGroup tor1_bar(const GradedModule& m);

struct DeltaBounds {
  Degree deg_h0, deg_h1, deg_u_coker, deg_u_ker, deg_tor1;
  Degree delta;
  Degree a_m;
  /// A(M) <= delta(M) + A(R).
  Check a_delta;
  nlohmann::json to_json() const;
};

DeltaBounds delta_and_bounds(const GradedModule& m, const StabilityProfile& ring_profile);

/// deg H_0(M) <= a iff M is generated in degrees <= a, for every a in window;
/// generation is tested directly from the classes of R acting on M_{<=a}.
Check generation_check(const GradedModule& m);

/// deg(N (x) M) <= min(deg N + deg H_0(M), deg H_0(N) + deg M).
Check tensor_degree_check(const GradedModule& n_mod, const GradedModule& m_mod);

}  // namespace stabring
