#include <doctest.h>

#include <random>

#include "brute.hpp"
#include "stabring/oracle.hpp"
#include "stabring/zlinalg.hpp"

using namespace stabring;

namespace {

using Dense = std::vector<std::vector<Integer>>;

Dense random_dense(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int range, double zero_prob) {
  std::uniform_int_distribution<int> val(-range, range);
  std::bernoulli_distribution zero(zero_prob);
  Dense a(rows, std::vector<Integer>(cols));
  for (auto& row : a)
    for (auto& x : row) x = zero(rng) ? 0 : val(rng);
  return a;
}

Dense low_rank(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t rank) {
  const Dense l = random_dense(rng, rows, rank, 3, 0.2), r = random_dense(rng, rank, cols, 3, 0.2);
  Dense a(rows, std::vector<Integer>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t k = 0; k < rank; ++k) a[i][j] += l[i][k] * r[k][j];
  return a;
}

std::vector<Integer> nonunit(std::vector<Integer> v) {
  std::erase_if(v, [](const Integer& x) { return x == 1; });
  return v;
}

}  // namespace

TEST_SUITE("zlinalg") {

TEST_CASE("smith invariants of small matrices") {
  CHECK(smith_invariants(IntMatrix::identity(4)) == std::vector<Integer>(4, 1));
  CHECK(smith_invariants(IntMatrix(3, 5)).empty());
  CHECK(smith_invariants(IntMatrix(0, 0)).empty());
  CHECK(smith_invariants(IntMatrix::from_dense({{2, 0}, {0, 3}})) == std::vector<Integer>{1, 6});
  CHECK(smith_invariants(IntMatrix::from_dense({{2, 4}, {6, 8}})) == std::vector<Integer>{2, 4});
}

TEST_CASE("chain homology") {
  const HomologyGroup free3 = chain_homology(IntMatrix(2, 3), IntMatrix(3, 1));
  CHECK(free3.free_rank == 3);
  CHECK(free3.torsion.empty());
  const HomologyGroup z2 = chain_homology(IntMatrix(0, 1), IntMatrix::from_dense({{2}}));
  CHECK(z2.free_rank == 0);
  CHECK(z2.torsion == std::vector<Integer>{2});
  CHECK(z2.to_string() == "Z/2");
  const BarHomology bar = bar_homology(load_group("Z2"));
  CHECK(bar.h2.is_zero());
}

TEST_CASE("rank against fraction-free elimination") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng() % 9, cols = 1 + rng() % 9;
    const Dense a = trial % 2 ? random_dense(rng, rows, cols, 5, 0.5) : low_rank(rng, rows, cols, 1 + rng() % 3);
    CAPTURE(trial);
    CHECK(matrix_rank(IntMatrix::from_dense(a)) == brute::bareiss_rank(a));
  }
}

TEST_CASE("invariant factors against determinantal divisors") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    Dense a = random_dense(rng, rows, cols, 6, 0.3);
    if (trial % 3 == 0)
      for (auto& row : a)
        for (auto& x : row) x *= 2;
    CAPTURE(trial);
    const auto expect = brute::determinantal_invariants(a);
    CHECK(smith_invariants(IntMatrix::from_dense(a)) == expect);
    CHECK(dense_invariants(a) == expect);
    LatticeEchelon e(rows);
    e.insert_columns(IntMatrix::from_dense(a));
    CHECK(nonunit(e.invariant_factors()) == nonunit(expect));
  }
}

TEST_CASE("smith transforms") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    const IntMatrix a = IntMatrix::from_dense(random_dense(rng, rows, cols, 9, 0.3));
    const SmithForm s = smith_normal_form(a);
    CHECK(s.u * a * s.v == s.d);
    CHECK(abs(brute::determinant(s.u.dense())) == 1);
    CHECK(abs(brute::determinant(s.v.dense())) == 1);
    for (std::size_t i = 0; i < s.d.rows(); ++i)
      for (std::size_t j = 0; j < s.d.cols(); ++j)
        if (i != j) CHECK(s.d.at(i, j) == 0);
    for (std::size_t i = 1; i < s.invariants.size(); ++i) CHECK(s.invariants[i] % s.invariants[i - 1] == 0);
  }
}

TEST_CASE("lattice echelon kernel and membership") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t rows = 2 + rng() % 6, cols = 2 + rng() % 8;
    const IntMatrix a = IntMatrix::from_dense(low_rank(rng, rows, cols, 1 + rng() % 3));
    LatticeEchelon e(rows, true);
    e.insert_columns(a);
    CHECK(e.rank() == matrix_rank(a));
    CHECK(e.kernel().size() == cols - e.rank());
    for (const auto& k : e.kernel()) CHECK(a.apply(k).empty());
    SparseVec combo;
    for (std::size_t j = 0; j < cols; ++j) combo = axpy(combo, Integer(static_cast<long>(rng() % 7) - 3), a.column(j));
    CHECK(e.contains(combo));
    SparseVec coords;
    REQUIRE(e.coordinates(combo, coords));
  }
  LatticeEchelon e(2);
  e.insert({{0, Integer(2)}});
  CHECK_FALSE(e.contains({{0, Integer(1)}}));
  CHECK(e.contains({{0, Integer(-4)}}));
}

TEST_CASE("text round trip and products") {
  const IntMatrix a = IntMatrix::from_dense({{1, -2, 0}, {0, 0, 7}});
  CHECK(IntMatrix::from_text(a.to_text()) == a);
  CHECK(a.transpose().transpose() == a);
  CHECK((a * IntMatrix::identity(3)) == a);
  CHECK((a - a).is_zero());
  CHECK(a.nnz() == 3);
  const HomologyGroup c = cokernel(IntMatrix::from_dense({{2, 0}, {0, 0}}));
  CHECK(c.free_rank == 1);
  CHECK(c.torsion == std::vector<Integer>{2});
}

}
