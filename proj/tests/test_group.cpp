#include <doctest.h>

#include "brute.hpp"
#include "stabring/error.hpp"
#include "stabring/group.hpp"

using namespace stabring;

TEST_SUITE("group") {

TEST_CASE("cyclic spec of order 2") {
  const FiniteGroup g = load_group({{"kind", "cyclic"}, {"order", 2}});
  CHECK(g.order() == 2);
  CHECK(g.mul(0, 1) == 1);
  CHECK(g.mul(1, 1) == 0);
  CHECK(g.inv(1) == 1);
}

TEST_CASE("non-associative table names the triple") {
  // Smallest non-associative loop: Latin square with identity 0.
  nlohmann::json spec = {{"kind", "cayley"},
                         {"table",
                          {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}}}};
  try {
    (void)load_group(spec);
    FAIL("accepted a non-associative table");
  } catch (const GroupError& e) {
    CHECK(std::string(e.what()).find("not associative at") != std::string::npos);
  }
}

TEST_CASE("malformed tables are rejected") {
  CHECK_THROWS_AS(load_group({{"kind", "cayley"}, {"table", {{0, 1}, {1, 1}}}}), GroupError);
  CHECK_THROWS_AS(load_group({{"kind", "cayley"}, {"table", {{0, 1}, {1}}}}), GroupError);
  CHECK_THROWS_AS(load_group("Z0"), GroupError);
  CHECK_THROWS_AS(load_group("A5x"), GroupError);
}

TEST_CASE("identity label is moved to 0") {
  const FiniteGroup g = load_group({{"kind", "cayley"}, {"table", {{1, 0}, {0, 1}}}});
  CHECK(g.mul(0, 1) == 1);
  CHECK(g.mul(1, 1) == 0);
}

TEST_CASE("permutation closure") {
  const FiniteGroup g = load_group({{"kind", "perm"}, {"generators", {{{1, 2}}, {{1, 2, 3}}}}});
  CHECK(g.order() == 6);
  CHECK_FALSE(g.is_abelian());
  CHECK_THROWS_AS(load_group({{"kind", "perm"}, {"generators", {{{1, 2, 3, 4, 5}}, {{1, 2}}}}}, {.order_cap = 50}),
                  CapExceeded);
}

TEST_CASE("conjugation and commutators") {
  const FiniteGroup s3 = load_group("S3");
  const FiniteGroup z4 = load_group("Z4");
  for (Element x = 0; x < s3.order(); ++x) {
    CHECK(s3.conjugate(x, 0) == x);
    CHECK(s3.commutator(x, x) == 0);
  }
  for (Element x = 0; x < 4; ++x)
    for (Element y = 0; y < 4; ++y) {
      CHECK(z4.conjugate(x, y) == x);
      CHECK(z4.commutator(x, y) == 0);
    }
  std::vector<Element> transpositions, three_cycles;
  for (Element x = 1; x < 6; ++x) (s3.element_order(x) == 2 ? transpositions : three_cycles).push_back(x);
  REQUIRE(transpositions.size() == 3);
  REQUIRE(three_cycles.size() == 2);
  const Element t = transpositions[0], c = three_cycles[0];
  const Element tc = s3.conjugate(t, c);
  CHECK(s3.element_order(tc) == 2);
  CHECK(tc != t);
  CHECK(s3.element_order(s3.commutator(transpositions[0], transpositions[1])) == 3);
}

TEST_CASE("subgroup counts against subset enumeration") {
  const std::pair<const char*, std::size_t> expected[] = {{"trivial", 1}, {"Z2", 2}, {"Z3", 2}, {"Z4", 3},
                                                          {"V4", 5},      {"S3", 6}, {"D4", 10}, {"Q8", 6}};
  for (const auto& [name, count] : expected) {
    CAPTURE(name);
    const FiniteGroup g = load_group(name);
    const auto subs = enumerate_subgroups(g);
    CHECK(subs.size() == count);
    CHECK(brute::subgroup_count(g) == count);
    CHECK(subs.front().elements.size() == 1);
    CHECK(subs.back().elements.size() == g.order());
    for (const auto& s : subs) {
      CHECK(s.group.order() == s.elements.size());
      for (std::size_t i = 0; i < s.elements.size(); ++i)
        for (std::size_t j = 0; j < s.elements.size(); ++j)
          CHECK(s.elements[s.group.mul(i, j)] == g.mul(s.elements[i], s.elements[j]));
    }
  }
}

TEST_CASE("products and hashes") {
  const FiniteGroup v = direct_product(cyclic_group(2), cyclic_group(2));
  CHECK(v.order() == 4);
  CHECK(v.is_abelian());
  for (Element x = 1; x < 4; ++x) CHECK(v.element_order(x) == 2);
  const FiniteGroup z2a = load_group("Z2");
  const FiniteGroup z2b = load_group({{"kind", "cyclic"}, {"order", 2}});
  CHECK(z2a.hash() == z2b.hash());
  CHECK(load_group("Z4").hash() != load_group("V4").hash());
  const FiniteGroup p = load_group({{"kind", "product"}, {"factors", {"Z2", "Z4"}}});
  CHECK(p.order() == 8);
  CHECK(generated_subgroup(p, std::vector<Element>{}).size() == 1);
}

}
