#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace stabring {

using Integer = mpz_class;

/// Sparse integer vector: (index, value) pairs sorted by index, no zeros.
using SparseVec = std::vector<std::pair<std::uint32_t, Integer>>;

/// Sorts, merges duplicate indices and drops zeros.
void normalize(SparseVec& v);
/// a + c * b.
SparseVec axpy(const SparseVec& a, const Integer& c, const SparseVec& b);
SparseVec scaled(const SparseVec& v, const Integer& c);

struct Triplet {
  std::uint32_t row;
  std::uint32_t col;
  Integer value;
};

/// Sparse integer matrix stored by columns.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols, SparseVec{}) {}

  /// Duplicate entries are summed; zeros are dropped.
  static IntMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_dense(const std::vector<std::vector<Integer>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_.size(); }
  std::size_t nnz() const;
  bool is_zero() const;

  const SparseVec& column(std::size_t j) const { return cols_[j]; }
  /// Replaces column j; the vector is normalized.
  void set_column(std::size_t j, SparseVec v);
  void append_column(SparseVec v);
  Integer at(std::size_t i, std::size_t j) const;

  /// Row-major sorted entries.
  std::vector<Triplet> triplets() const;
  std::vector<std::vector<Integer>> dense() const;

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix operator+(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  SparseVec apply(const SparseVec& x) const;
  IntMatrix transpose() const;
  /// [this | rhs].
  IntMatrix hconcat(const IntMatrix& rhs) const;
  /// Columns permuted and rows permuted: result(row_perm[i], col_perm[j]) = (i, j).
  IntMatrix permuted(const std::vector<std::size_t>& row_perm,
                     const std::vector<std::size_t>& col_perm) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  /// Text interchange: "rows cols nnz" then one "row col value" line per entry.
  std::string to_text() const;
  static IntMatrix from_text(const std::string& text);

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVec> cols_;
};

/// Incremental Z-lattice basis of column vectors in echelon form: each basis
/// vector has a distinct leading (smallest) row. Insertion applies only
/// unimodular column operations, so with tracking enabled every vector that
/// reduces to zero records a kernel relation among the inserted columns.
class LatticeEchelon {
 public:
  explicit LatticeEchelon(std::size_t dim, bool track_kernel = false);

  /// Adds v as the next column. Returns true when the rank grows.
  bool insert(SparseVec v);
  void insert_columns(const IntMatrix& m);

  std::size_t rank() const { return basis_.size(); }
  std::size_t dim() const { return dim_; }
  std::size_t inserted() const { return inserted_; }

  bool contains(const SparseVec& v) const;
  /// Coordinates of v over basis() if v lies in the lattice.
  bool coordinates(const SparseVec& v, SparseVec& coords) const;

  /// Basis vectors ordered by leading row.
  std::vector<SparseVec> basis() const;
  /// Z-basis of the relation module among inserted columns (tracking only).
  const std::vector<SparseVec>& kernel() const { return kernel_; }

  /// Invariant factors of the lattice basis matrix (all nonzero, ascending
  /// under divisibility). Their count is the rank.
  std::vector<Integer> invariant_factors() const;

 private:
  struct Pivot {
    SparseVec vec;
    SparseVec combo;
  };
  std::size_t dim_;
  bool track_;
  std::size_t inserted_ = 0;
  std::map<std::uint32_t, Pivot> basis_;
  std::vector<SparseVec> kernel_;
};

/// Invariant factors d1 | d2 | ... of A (nonzero only).
std::vector<Integer> smith_invariants(const IntMatrix& a);
std::size_t matrix_rank(const IntMatrix& a);

struct SmithForm {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  std::vector<Integer> invariants;
};

/// Dense Smith normal form with transforms: U * A * V = D with U, V
/// unimodular and D diagonal with d1 | d2 | ...
SmithForm smith_normal_form(const IntMatrix& a);

/// Dense invariant factors with min-|entry| pivoting.
std::vector<Integer> dense_invariants(std::vector<std::vector<Integer>> m);

/// A finitely generated abelian group Z^free_rank + sum Z/t_i.
struct HomologyGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  std::string to_string() const;
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

/// ker(d_out) / im(d_in). Throws when shapes disagree or d_out * d_in != 0.
HomologyGroup chain_homology(const IntMatrix& d_out, const IntMatrix& d_in);

/// Z^rows / im(relations).
HomologyGroup cokernel(const IntMatrix& relations);

/// Kernel of the map coker(src_rel) -> coker(dst_rel) induced by f.
HomologyGroup kernel_of_induced(const IntMatrix& f, const IntMatrix& src_rel,
                                const IntMatrix& dst_rel);

}  // namespace stabring
