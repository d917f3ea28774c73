#include <doctest.h>

#include "brute.hpp"
#include "stabring/free_group.hpp"

using namespace stabring;

TEST_SUITE("free_group") {

TEST_CASE("free reduction") {
  CHECK(reduce_word({1, -1}).empty());
  CHECK(reduce_word({1, 2, -2, 1}) == std::vector<Letter>{1, 1});
  CHECK(reduce_word({2, 1, -1, -2, 3}) == std::vector<Letter>{3});
  const FreeWord w({1, 2, -1});
  CHECK((w * w.inverse()).empty());
}

TEST_CASE("boundary word") {
  const FreeWord w1 = boundary_word(1);
  CHECK(w1.length() == 4);
  CHECK(std::vector<Letter>(w1.letters().begin(), w1.letters().end()) == std::vector<Letter>{1, 2, -1, -2});
  CHECK(boundary_word(2).length() == 8);
  const FiniteGroup z4 = load_group("Z4");
  for (Element a = 0; a < 4; ++a)
    for (Element b = 0; b < 4; ++b)
      for (Element c = 0; c < 4; ++c) {
        const std::vector<Element> v = {a, b, c, (a + b) % 4};
        CHECK(evaluate_word(boundary_word(2), v, z4) == 0);
        CHECK(evaluate_boundary(v, z4) == 0);
      }
}

TEST_CASE("named moves fix the boundary word") {
  for (int n = 1; n <= 3; ++n) {
    const auto moves = named_moves(n);
    CHECK(moves.size() == static_cast<std::size_t>(4 * n + 2 * (n - 1)));
    for (const auto& m : moves) {
      CAPTURE(m.provenance);
      CHECK(m.forward.apply(boundary_word(n)) == boundary_word(n));
      CHECK(m.forward.after(m.inverse).is_identity());
      CHECK(m.inverse.after(m.forward).is_identity());
    }
  }
  // T1 at genus 1: a -> ab, b -> b.
  bool found = false;
  for (const auto& m : named_moves(1))
    found |= m.forward.images[0] == FreeWord({1, 2}) && m.forward.images[1] == FreeWord({2});
  CHECK(found);
}

TEST_CASE("Whitehead search") {
  WhiteheadSearchStats stats;
  const auto moves = enumerate_stabilizing_automorphisms(2, 2, &stats);
  CHECK(stats.whitehead_count > 0);
  bool mixes = false, has_identity = false;
  for (const auto& m : moves) {
    CHECK(m.forward.apply(boundary_word(2)) == boundary_word(2));
    CHECK(m.forward.after(m.inverse).is_identity());
    has_identity |= m.forward.is_identity();
    const auto a = m.forward.abelianization();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i / 2 != j / 2 && a[i][j] != 0) mixes = true;
  }
  CHECK(mixes);
  CHECK(has_identity);
  // Deduplicated by image tuple.
  std::set<std::vector<FreeWord>> images;
  for (const auto& m : moves) images.insert(m.forward.images);
  CHECK(images.size() == moves.size());
}

TEST_CASE("compiled moves") {
  const FiniteGroup z2 = load_group("Z2");
  Substitution t1{{FreeWord({1, 2}), FreeWord({2})}};
  const CompiledMove c(t1, z2);
  std::vector<Element> out(2);
  const std::vector<Element> v = {0, 1};
  c.apply(v, out);
  CHECK(out == std::vector<Element>{1, 1});
  CHECK(CompiledMove(Substitution::identity(2), z2).is_identity());

  const FiniteGroup s3 = load_group("S3");
  for (const auto& m : named_moves(2)) {
    const CompiledMove f(m.forward, s3), b(m.inverse, s3);
    for (std::uint64_t r = 0; r < 1296; r += 7) {
      std::vector<Element> x(4), y(4), z(4);
      std::uint64_t q = r;
      for (int i = 3; i >= 0; --i) x[i] = q % 6, q /= 6;
      f.apply(x, y);
      b.apply(y, z);
      CHECK(z == x);
      for (int i = 0; i < 4; ++i) CHECK(y[i] == brute::eval(m.forward.images[i], x, s3));
    }
  }
}

TEST_CASE("move set hash is reproducible") {
  const MoveSet a = MoveSet::build(2, 2), b = MoveSet::build(2, 2), c = MoveSet::build(2, 1);
  CHECK(a.hash == b.hash);
  CHECK(a.automorphisms.size() == b.automorphisms.size());
  CHECK(a.hash != c.hash);
  CHECK(a.manifest()["hash"] == to_hex(a.hash));
}

}
