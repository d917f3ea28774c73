#include <doctest.h>

#include <map>
#include <memory>
#include <random>

#include "stabring/pipeline.hpp"
#include "stabring/ring.hpp"

using namespace stabring;

namespace {

const GradedRing& ring_of(const std::string& name, int n_max) {
  static std::map<std::pair<std::string, int>, std::unique_ptr<GradedRing>> memo;
  auto& slot = memo[{name, n_max}];
  if (!slot) slot = std::make_unique<GradedRing>(GradedRing::build(load_group(name), n_max));
  return *slot;
}

}  // namespace

TEST_SUITE("ring") {

TEST_CASE("trivial group") {
  const GradedRing& r = ring_of("trivial", 4);
  for (int n = 0; n <= 4; ++n) CHECK(r.basis_size(n) == 1);
  const StabilityProfile p = r.stability_profile();
  for (int n = 0; n < 4; ++n) CHECK(p.u_bijective(n));
  CHECK(p.a == 0);
  CHECK(p.stable_within_window);
  CHECK(p.bijective_from == 0);
}

TEST_CASE("degree-one counts") {
  CHECK(ring_of("Z2", 2).basis_size(1) == 2);
  CHECK(ring_of("Z3", 2).basis_size(1) == 2);
}

TEST_CASE("unit, U and products") {
  const GradedRing& r = ring_of("S3", 3);
  for (int n = 0; n <= 3; ++n)
    for (std::size_t j = 0; j < r.basis_size(n); ++j) {
      CHECK(r.product(0, 0, n, j) == j);
      CHECK(r.product(n, j, 0, 0) == j);
      if (n < 3) {
        CHECK(r.left_pair(0, 0, n, j) == r.u_map(n)[j]);
        CHECK(r.product(1, r.pair_class(0, 0), n, j) == r.u_map(n)[j]);
      }
    }
  CHECK(r.u_map(0)[0] == r.pair_class(0, 0));
  const RingElement x = r.basis_element(1, 2);
  CHECK(r.apply_U(x) == r.multiply(r.basis_element(1, r.pair_class(0, 0)), x));
}

TEST_CASE("U on Z2") {
  const GradedRing& r = ring_of("Z2", 2);
  const std::size_t g1 = r.class_of(std::vector<Element>{1, 0});
  CHECK(r.u_map(1)[g1] == r.class_of(std::vector<Element>{0, 0, 1, 0}));
}

TEST_CASE("stability profiles") {
  const StabilityProfile z2 = ring_of("Z2", 4).stability_profile();
  CHECK(z2.counts == std::vector<std::size_t>{1, 2, 2, 2, 2});
  CHECK(z2.bijective_from == 1);
  CHECK(z2.stable_within_window);
  CHECK(z2.a == 1);
  const StabilityProfile z4 = ring_of("Z4", 3).stability_profile();
  CHECK(z4.counts.back() == 3);
  CHECK(z4.stable_within_window);
}

TEST_CASE("products do not depend on representatives") {
  for (const char* name : {"Z2", "V4", "S3"}) {
    CAPTURE(name);
    const GradedRing& r = ring_of(name, 3);
    const Check c = representative_check(r, nullptr, 1000, 17);
    CHECK(c.verdict == Verdict::pass);
  }
}

TEST_CASE("associativity") {
  const GradedRing& r = ring_of("D4", 3);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 300; ++t) {
    const int a = rng() % 2, b = rng() % 2, c = 3 - a - b < 0 ? 0 : rng() % (4 - a - b);
    const std::size_t x = rng() % r.basis_size(a), y = rng() % r.basis_size(b), z = rng() % r.basis_size(c);
    CHECK(r.product(a + b, r.product(a, x, b, y), c, z) == r.product(a, x, b + c, r.product(b, y, c, z)));
  }
}

}
