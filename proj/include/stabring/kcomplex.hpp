#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stabring/modules.hpp"
#include "stabring/verdict.hpp"
#include "stabring/zlinalg.hpp"

namespace stabring {

/// K(M)_p = Z<G^{2p}> (x) M[p], sliced by total degree n. The basis of
/// K_p(n) is G^{2p} x (generators of M_{n-p}); tuple t and generator j sit
/// at index rank(t) * gens(M_{n-p}) + j. Needs free components.
class KComplex {
 public:
  KComplex(const GradedModule& module, int p_max, int n_max);

  const GradedModule& module() const { return *module_; }
  int p_max() const { return p_max_; }
  int n_max() const { return n_max_; }
  std::size_t dim(int p, int n) const;

  /// d: K_p(n) -> K_{p-1}(n); an empty-row matrix for p = 0.
  const IntMatrix& d(int p, int n) const;
  /// Column of d at any p (also p = p_max + 1), computed on demand.
  SparseVec d_column(int p, int n, std::size_t col) const;

  /// Right multiplication by [[g,h]] on K_p(n) -> K_p(n+1) (M = R only).
  SparseVec right_mult(int p, int n, std::size_t col, Element g, Element h) const;
  /// U on the module factor, K_p(n) -> K_p(n+1).
  SparseVec u_column(int p, int n, std::size_t col) const;
  /// S_{(g,h)}: K_p(n) -> K_{p+1}(n+1) (M = R only).
  SparseVec homotopy(int p, int n, std::size_t col, Element g, Element h) const;
  /// S computed with the boundary value of an explicit representative of
  /// the module class.
  SparseVec homotopy_with_rep(int p, int n, std::size_t col, Element g, Element h,
                              std::span<const Element> class_rep) const;

 private:
  std::size_t mdim(int k) const { return k < 0 ? 0 : module_->gens(k); }
  void require_regular() const;
  std::vector<Element> tuple_of(int p, std::size_t rank) const;

  const GradedModule* module_;
  int p_max_;
  int n_max_;
  std::size_t g_;
  bool regular_ = false;
  std::vector<std::uint64_t> pow_;
  // d_[p][n], p = 0..p_max.
  std::vector<std::vector<IntMatrix>> d_;
};

struct HomologySpot {
  int p = 0;
  int n = 0;
  HomologyGroup group;
};

struct KHomology {
  std::vector<HomologySpot> spots;
  /// h_p for p <= p_max - 1 and whether H_p is nonzero at the top degree.
  std::vector<Degree> h;
  std::vector<bool> reaches_window_edge;
};

KHomology kc_homology(const KComplex& k);
HomologyGroup kc_homology(const KComplex& k, int p, int n);

Check verify_d_squared(const KComplex& k);
/// S d + d S = right multiplication by [[g,h]], every (g,h), every spot with
/// n + 1 <= n_max.
Check homotopy_check(const KComplex& k);
/// Right multiplication sends every cycle of K_p(n) into the boundaries of
/// K_p(n+1), for p <= p_max - 1 and n + 1 <= n_max.
Check annihilation_check(const KComplex& k);
Check u_commutes_check(const KComplex& k);

/// Degree-bound verdicts for K(R) against the stability profile.
std::vector<Check> bound_checks(const StabilityProfile& profile, const KHomology& hom, int n_max);

}  // namespace stabring
