#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "stabring/hash.hpp"

namespace stabring {

/// Dense element index. Element 0 is always the identity.
using Element = std::uint32_t;

/// A finite group stored as a validated Cayley table. Immutable once built,
/// so a single instance can be shared by any number of worker threads.
class FiniteGroup {
 public:
  /// Builds a group from a row-major table; table[x * order + y] = x*y.
  /// Validates closure, associativity, identity and inverses. If the
  /// identity is not element 0 the labels of the identity and 0 are swapped.
  static FiniteGroup from_table(std::string name, std::size_t order,
                                std::vector<Element> table);

  std::size_t order() const { return order_; }
  const std::string& name() const { return name_; }
  static constexpr Element identity() { return 0; }

  Element mul(Element x, Element y) const { return table_[x * order_ + y]; }
  Element inv(Element x) const { return inverse_[x]; }

  /// x^y := y^-1 x y.
  Element conjugate(Element x, Element y) const { return mul(mul(inv(y), x), y); }
  /// [x, y] := x y x^-1 y^-1.
  Element commutator(Element x, Element y) const {
    return mul(mul(mul(x, y), inv(x)), inv(y));
  }

  bool is_abelian() const;
  /// Order of x as a group element.
  std::size_t element_order(Element x) const;

  std::span<const Element> table() const { return table_; }

  /// SHA-256 of the order and the table, independent of the display name.
  const Digest& hash() const { return hash_; }

 private:
  FiniteGroup() = default;

  std::string name_;
  std::size_t order_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  Digest hash_{};
};

struct GroupLoadOptions {
  /// Largest group a permutation or product spec may close up to.
  std::size_t order_cap = 4096;
};

/// Parses a group-spec document: {"kind": "cayley" | "cyclic" | "product" |
/// "perm", ...}. A bare string names a built-in group (trivial, Z<k>, V4,
/// S3, D4, Q8).
FiniteGroup load_group(const nlohmann::json& spec, const GroupLoadOptions& options = {});

/// Direct product; element (x, y) has index x * |b| + y.
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
FiniteGroup cyclic_group(std::size_t order);
/// Closure of permutation generators on {1..degree}, given in cycle notation.
FiniteGroup permutation_group(std::string name,
                              const std::vector<std::vector<std::vector<int>>>& generators,
                              const GroupLoadOptions& options = {});

struct Subgroup {
  /// Sorted element indices in the ambient group.
  std::vector<Element> elements;
  /// The subgroup as a group in its own right; local index i is elements[i]
  /// (so the identity stays at 0).
  FiniteGroup group;
};

struct SubgroupOptions {
  std::size_t order_cap = 16;
};

/// Every subgroup exactly once, ordered by (order, element list). The first
/// entry is the trivial subgroup and the last is the whole group.
std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& group,
                                          const SubgroupOptions& options = {});

/// Subgroup generated by a set of elements, as a sorted element list.
std::vector<Element> generated_subgroup(const FiniteGroup& group,
                                        std::span<const Element> generators);

}  // namespace stabring
