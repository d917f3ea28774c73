#include <doctest.h>

#include <map>
#include <memory>

#include "stabring/error.hpp"
#include "stabring/kcomplex.hpp"
#include "stabring/orbits.hpp"

using namespace stabring;

namespace {

const GradedRing& ring_of(const std::string& name, int n_max) {
  static std::map<std::pair<std::string, int>, std::unique_ptr<GradedRing>> memo;
  auto& slot = memo[{name, n_max}];
  if (!slot) slot = std::make_unique<GradedRing>(GradedRing::build(load_group(name), n_max));
  return *slot;
}

// The differential without conjugators.
IntMatrix naive_d(const GradedModule& m, int p, int n) {
  const std::size_t g = m.ring->group().order();
  const int k = n - p;
  const TupleCodec codec(g, 2 * p), shorter(g, 2 * (p - 1));
  std::vector<Triplet> trip;
  for (std::uint64_t t = 0; t < codec.size(); ++t) {
    const auto v = codec.decode(t);
    for (std::size_t j = 0; j < m.gens(k); ++j)
      for (int kk = 1; kk <= p; ++kk) {
        std::vector<Element> rest;
        for (int i = 1; i <= p; ++i)
          if (i != kk) rest.insert(rest.end(), {v[2 * i - 2], v[2 * i - 1]});
        for (const auto& [r, x] : m.action(k, v[2 * kk - 2], v[2 * kk - 1]).column(j))
          trip.push_back({static_cast<std::uint32_t>(shorter.encode(rest) * m.gens(k + 1) + r),
                          static_cast<std::uint32_t>(t * m.gens(k) + j), kk % 2 ? x : Integer(-x)});
      }
  }
  return IntMatrix::from_triplets(shorter.size() * m.gens(k + 1), codec.size() * m.gens(k), std::move(trip));
}

}  // namespace

TEST_SUITE("kcomplex") {

TEST_CASE("p = 1 column is the module action") {
  const GradedModule m = regular_module(ring_of("S3", 3));
  const KComplex k(m, 2, 3);
  for (int n = 1; n <= 3; ++n)
    for (std::size_t col = 0; col < k.dim(1, n); ++col) {
      const std::size_t j = col % m.gens(n - 1), t = col / m.gens(n - 1);
      CHECK(k.d_column(1, n, col) == m.action(n - 1, t / 6, t % 6).column(j));
    }
}

TEST_CASE("trivial group alternates U and zero") {
  const GradedModule m = regular_module(ring_of("trivial", 4));
  const KComplex k(m, 3, 4);
  for (int n = 0; n <= 4; ++n) {
    if (n >= 1) CHECK(k.d(1, n) == IntMatrix::identity(1));
    if (n >= 2) CHECK(k.d(2, n).is_zero());
    if (n >= 3) CHECK(k.d(3, n) == IntMatrix::identity(1));
  }
  const KHomology h = kc_homology(k);
  for (const auto& s : h.spots)
    if (s.p % 2 == 1) CHECK(s.group.is_zero());
  for (const auto& c : bound_checks(ring_of("trivial", 4).stability_profile(), h, 4)) {
    CAPTURE(c.name);
    CHECK(c.verdict == Verdict::pass);
  }
}

TEST_CASE("abelian groups need no conjugators") {
  for (const char* name : {"Z4", "V4"}) {
    const GradedModule m = regular_module(ring_of(name, 3));
    const KComplex k(m, 3, 3);
    for (int p = 1; p <= 3; ++p)
      for (int n = p; n <= 3; ++n) CHECK(k.d(p, n) == naive_d(m, p, n));
  }
}

TEST_CASE("conjugators matter for S3") {
  const GradedModule m = regular_module(ring_of("S3", 3));
  const KComplex k(m, 2, 3);
  CHECK_FALSE(k.d(2, 3) == naive_d(m, 2, 3));
}

TEST_CASE("d squared vanishes") {
  const GradedModule z2 = regular_module(ring_of("Z2", 4));
  CHECK(verify_d_squared(KComplex(z2, 3, 4)).verdict == Verdict::pass);
  const GradedModule s3 = regular_module(ring_of("S3", 3));
  CHECK(verify_d_squared(KComplex(s3, 2, 3)).verdict == Verdict::pass);
  const GradedModule bar = bar_module(ring_of("S3", 3));
  CHECK(verify_d_squared(KComplex(bar, 2, 3)).verdict == Verdict::pass);
}

TEST_CASE("homotopy identity and annihilation") {
  for (const char* name : {"trivial", "Z2", "S3"}) {
    CAPTURE(name);
    const GradedModule m = regular_module(ring_of(name, 3));
    const KComplex k(m, 2, 3);
    CHECK(homotopy_check(k).verdict == Verdict::pass);
    CHECK(annihilation_check(k).verdict == Verdict::pass);
    CHECK(u_commutes_check(k).verdict == Verdict::pass);
  }
}

TEST_CASE("S at (1,1) prepends the identity pair") {
  const GradedModule m = regular_module(ring_of("Z3", 3));
  const KComplex k(m, 2, 3);
  for (std::size_t col = 0; col < k.dim(1, 2); ++col) {
    const auto s = k.homotopy(1, 2, col, 0, 0);
    REQUIRE(s.size() == 1);
    CHECK(s[0].first == col);
  }
}

TEST_CASE("degree-zero homology of R") {
  const GradedModule m = regular_module(ring_of("V4", 3));
  const KComplex k(m, 2, 3);
  CHECK(kc_homology(k, 0, 0) == HomologyGroup{1, {}});
  for (int n = 1; n <= 3; ++n) CHECK(kc_homology(k, 0, n).is_zero());
  CHECK_THROWS_AS(kc_homology(k, 2, 3), ModuleError);
}

TEST_CASE("modules with relations are rejected") {
  const GradedRing& r = ring_of("Z2", 3);
  const GradedModule q = quotient_u_module(regular_module(r));
  CHECK_THROWS_AS(KComplex(q, 1, 3), ModuleError);
  CHECK_THROWS_AS(KComplex(regular_module(r), 1, 4), ModuleError);
  const KComplex kb(bar_module(r), 1, 3);
  CHECK_THROWS_AS(kb.homotopy(0, 0, 0, 0, 0), ModuleError);
}

}
