#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "stabring/group.hpp"
#include "stabring/hash.hpp"

namespace stabring {

/// A letter of the free group on x_1..x_r: +i is x_i, -i is x_i^-1.
using Letter = int;

/// A freely reduced word. Odd generators x_{2i-1} model the a_i of a
/// Hurwitz vector and even generators x_{2i} the b_i.
class FreeWord {
 public:
  FreeWord() = default;
  /// Reduces on construction.
  explicit FreeWord(std::vector<Letter> letters);

  std::span<const Letter> letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  FreeWord inverse() const;
  FreeWord operator*(const FreeWord& rhs) const;

  static FreeWord generator(int i) { return FreeWord({i}); }

  friend bool operator==(const FreeWord&, const FreeWord&) = default;
  friend auto operator<=>(const FreeWord&, const FreeWord&) = default;

  std::string to_string() const;

 private:
  std::vector<Letter> letters_;
};

/// Free reduction; the result is the unique reduced representative.
std::vector<Letter> reduce_word(std::vector<Letter> letters);

/// W = [x1, x2][x3, x4]...[x_{2n-1}, x_{2n}] with [x, y] = x y x^-1 y^-1.
FreeWord boundary_word(int genus);

/// An endomorphism of the free group of rank 2n given by the images of the
/// generators; substitution applies it to words.
struct Substitution {
  std::vector<FreeWord> images;

  int rank() const { return static_cast<int>(images.size()); }
  FreeWord apply(const FreeWord& w) const;
  /// (this o other)(x) = this(other(x)).
  Substitution after(const Substitution& other) const;
  bool is_identity() const;
  static Substitution identity(int rank);
  /// Exponent-sum matrix: entry (i, j) is the exponent sum of x_{j+1} in the
  /// image of x_{i+1}.
  std::vector<std::vector<long>> abelianization() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;
  friend auto operator<=>(const Substitution&, const Substitution&) = default;
};

enum class MoveOrigin { named, whitehead };

/// An automorphism of the free group that fixes the boundary word exactly,
/// together with its verified inverse.
struct MarkedAutomorphism {
  Substitution forward;
  Substitution inverse;
  MoveOrigin origin = MoveOrigin::named;
  /// Move name (T1_1, S_2^-1, ...) or Whitehead search depth tag.
  std::string provenance;
};

/// Named handle moves for genus n: T1_i, T2_i, S_i and their inverses.
std::vector<MarkedAutomorphism> named_moves(int genus);

struct WhiteheadSearchStats {
  std::size_t whitehead_count = 0;
  std::size_t single_fixing = 0;
  std::size_t composite_fixing = 0;
};

/// Named moves followed by every Whitehead automorphism of the rank-2n free
/// group fixing W, and for depth 2 every composite of two Whitehead
/// automorphisms that fixes W. Deduplicated by image tuple; each entry is
/// checked to satisfy reduce(phi(W)) = W and phi o phi^-1 = id.
std::vector<MarkedAutomorphism> enumerate_stabilizing_automorphisms(
    int genus, int depth, WhiteheadSearchStats* stats = nullptr);

/// A move compiled against a concrete group: coordinate i of the image tuple
/// is the evaluation of the image word of x_{i+1}.
class CompiledMove {
 public:
  CompiledMove(const Substitution& phi, const FiniteGroup& group);

  /// out[i] = eval(phi(x_{i+1}), v). v and out must not alias.
  void apply(std::span<const Element> v, std::span<Element> out) const;
  bool is_identity() const { return identity_; }
  std::size_t arity() const { return offsets_.size() - 1; }

 private:
  const FiniteGroup* group_;
  std::vector<std::uint32_t> offsets_;
  // Encoded letters: coordinate index * 2 + (1 if inverted).
  std::vector<std::uint32_t> code_;
  bool identity_ = false;
};

/// Evaluates a word at a tuple (x_{i} -> v[i-1]).
Element evaluate_word(const FreeWord& w, std::span<const Element> v, const FiniteGroup& group);
/// beta(v) = [a_1, b_1] ... [a_n, b_n] evaluated in G.
Element evaluate_boundary(std::span<const Element> v, const FiniteGroup& group);

/// A genus-n move set: the automorphisms, their compiled maps and the
/// content hash used to key orbit caches.
struct MoveSet {
  int genus = 0;
  int depth = 0;
  std::vector<MarkedAutomorphism> automorphisms;
  Digest hash{};

  static MoveSet build(int genus, int depth);
  std::vector<CompiledMove> compile(const FiniteGroup& group) const;
  /// Manifest document: image words, provenance and hash.
  nlohmann::json manifest() const;
};

}  // namespace stabring
