#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "brute.hpp"
#include "stabring/error.hpp"
#include "stabring/orbits.hpp"

using namespace stabring;

namespace {

OrbitTable table_for(const FiniteGroup& g, int n, unsigned threads = 1, int depth = 2) {
  const MoveSet m = MoveSet::build(n, depth);
  OrbitOptions opt;
  opt.threads = threads;
  return enumerate_orbits(g, n, m.compile(g), m.hash, opt);
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("stabring_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_SUITE("orbits") {

TEST_CASE("tuple codec") {
  const TupleCodec c(3, 4);
  CHECK(c.size() == 81);
  CHECK(c.encode(std::vector<Element>{0, 0, 0, 0}) == 0);
  CHECK(c.encode(std::vector<Element>{1, 0, 0, 0}) == 27);
  for (std::uint64_t r = 0; r < 81; ++r) CHECK(c.encode(c.decode(r)) == r);
  CHECK(state_count(2, 40) == std::nullopt);
  CHECK(state_count(4, 2) == 256u);
}

TEST_CASE("small orbit counts") {
  for (int n = 0; n <= 3; ++n) CHECK(table_for(load_group("trivial"), n).count() == 1);
  const OrbitTable z2 = table_for(load_group("Z2"), 1);
  CHECK(z2.count() == 2);
  CHECK(z2.orbit_sizes() == std::vector<std::uint64_t>{1, 3});
  CHECK(table_for(load_group("Z3"), 1).count() == 2);
}

TEST_CASE("canonical representatives") {
  const OrbitTable t = table_for(load_group("Z2"), 1);
  CHECK(canonical_rep(t, std::vector<Element>{0, 0}) == std::vector<Element>{0, 0});
  CHECK(canonical_rep(t, std::vector<Element>{1, 0}) == canonical_rep(t, std::vector<Element>{0, 1}));
  const OrbitTable s = table_for(load_group("S3"), 2);
  const TupleCodec codec(6, 4);
  for (std::uint64_t r = 0; r < s.states(); r += 11) {
    const auto c = canonical_rep(s, codec.decode(r));
    CHECK(canonical_rep(s, c) == c);
    CHECK(codec.encode(c) <= r);
  }
}

TEST_CASE("partition agrees with breadth-first search") {
  const std::pair<const char*, int> cases[] = {{"Z2", 2}, {"Z3", 2}, {"V4", 2}, {"S3", 1}, {"S3", 2}, {"Q8", 1}};
  for (const auto& [name, n] : cases) {
    CAPTURE(name);
    CAPTURE(n);
    const FiniteGroup g = load_group(name);
    const MoveSet m = MoveSet::build(n, 2);
    const OrbitTable t = enumerate_orbits(g, n, m.compile(g), m.hash);
    const auto labels = brute::orbit_labels(g, n, m.automorphisms);
    REQUIRE(labels.size() == t.states());
    CHECK(brute::distinct(labels) == t.count());
    for (std::uint64_t r = 0; r < t.states(); ++r) CHECK(labels[r] == t.canonical_rank(r));
  }
}

TEST_CASE("thread count does not change the table") {
  const FiniteGroup g = load_group("V4");
  CHECK(table_for(g, 3, 1) == table_for(g, 3, 3));
  CHECK(table_for(load_group("S3"), 2, 1) == table_for(load_group("S3"), 2, 4));
}

TEST_CASE("orbit invariants") {
  const FiniteGroup g = load_group("D4");
  const MoveSet m = MoveSet::build(2, 2);
  const OrbitTable t = enumerate_orbits(g, 2, m.compile(g), m.hash);
  CHECK_FALSE(check_orbit_invariants(t, g, m.compile(g), 1).has_value());
}

TEST_CASE("state cap") {
  const FiniteGroup g = load_group("S3");
  const MoveSet m = MoveSet::build(3, 1);
  OrbitOptions opt;
  opt.state_cap = 1000;
  CHECK_THROWS_AS(enumerate_orbits(g, 3, m.compile(g), m.hash, opt), CapExceeded);
}

TEST_CASE("cache round trip and rejection") {
  const FiniteGroup g = load_group("Z3");
  const MoveSet m = MoveSet::build(2, 2);
  const OrbitTable t = enumerate_orbits(g, 2, m.compile(g), m.hash);
  const auto dir = scratch("cache");
  const auto file = dir / cache_file_name(g.hash(), m.hash, 2);
  cache_store(t, file);
  CHECK(cache_load(file, g.hash(), m.hash) == t);
  CHECK_THROWS_AS(cache_load(file, load_group("Z4").hash(), m.hash), CacheError);
  CHECK_THROWS_AS(cache_load(file, g.hash(), MoveSet::build(2, 1).hash), CacheError);
  const auto size = std::filesystem::file_size(file);
  std::filesystem::resize_file(file, size - 3);
  try {
    (void)cache_load(file, g.hash(), m.hash);
    FAIL("truncated file accepted");
  } catch (const CacheError& e) {
    CHECK(std::string(e.what()).find("length") != std::string::npos);
  }
  {
    std::ofstream junk(file, std::ios::binary | std::ios::trunc);
    junk << "nonsense";
  }
  CHECK_THROWS_AS(cache_load(file, g.hash(), m.hash), CacheError);
  std::filesystem::remove_all(dir);
}

}
