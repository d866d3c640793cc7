#include <gtest/gtest.h>

#include "oracles.hpp"
#include "segre/error.hpp"
#include "segre/random.hpp"
#include "segre/ratlin.hpp"

using namespace segre;

TEST(Ratlin, RrefOfDiagonalIsIdentity) {
  EXPECT_EQ(rref(Matrix{{2, 0}, {0, 3}}), Matrix::identity(2));
}

TEST(Ratlin, RrefNormalizesAndClearsAbovePivots) {
  Matrix m{{0, 2, 4}, {1, 1, 1}, {2, 4, 6}};
  EXPECT_EQ(rref(m), (Matrix{{1, 0, -1}, {0, 1, 2}, {0, 0, 0}}));
  EXPECT_EQ(rank(m), 2u);
}

TEST(Ratlin, KernelOfOneRow) {
  Subspace k = kernel(Matrix{{1, 1, 0}});
  EXPECT_EQ(k.dim(), 2u);
  EXPECT_TRUE(k.contains(Vector{1, -1, 0}));
  EXPECT_TRUE(k.contains(Vector{0, 0, 1}));
  EXPECT_FALSE(k.contains(Vector{1, 0, 0}));
}

TEST(Ratlin, IntegerSqrt) {
  EXPECT_EQ(*integer_sqrt_exact(0), 0);
  EXPECT_EQ(*integer_sqrt_exact(49), 7);
  EXPECT_FALSE(integer_sqrt_exact(50));
  EXPECT_FALSE(integer_sqrt_exact(-4));
  EXPECT_EQ(*rational_sqrt_exact(oracle::frac(9, 4)), oracle::frac(3, 2));
  EXPECT_FALSE(rational_sqrt_exact(oracle::frac(2, 9)));
}

TEST(Ratlin, ParseScalar) {
  EXPECT_EQ(parse_scalar("-3/6"), oracle::frac(-1, 2));
  EXPECT_EQ(parse_scalar("7"), Scalar(7));
  EXPECT_THROW(parse_scalar("1/0"), ParseError);
  EXPECT_THROW(parse_scalar("x"), ParseError);
  EXPECT_EQ(to_string(oracle::frac(4, 6)), "2/3");
}

TEST(Ratlin, SubspaceCanonicalForm) {
  Subspace a = Subspace::span(3, {Vector{1, 2, 3}, Vector{0, 1, 1}});
  Subspace b = Subspace::span(3, {Vector{1, 3, 4}, Vector{2, 4, 6}, Vector{1, 1, 2}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(Subspace::span(3, {}), Subspace(3));
  EXPECT_EQ(Subspace::full(3).dim(), 3u);
}

TEST(Ratlin, SumAndIntersection) {
  Subspace xy = Subspace::span(3, {Vector{1, 0, 0}, Vector{0, 1, 0}});
  Subspace yz = Subspace::span(3, {Vector{0, 1, 0}, Vector{0, 0, 1}});
  EXPECT_EQ(intersect(xy, yz), Subspace::span(3, {Vector{0, 1, 0}}));
  EXPECT_EQ(sum(xy, yz), Subspace::full(3));
}

TEST(Ratlin, CoordinatesRoundTrip) {
  Subspace s = Subspace::span(4, {Vector{1, 2, 0, 1}, Vector{0, 1, 1, 1}});
  Vector v = Scalar(3) * Vector{1, 2, 0, 1} - oracle::frac(1, 2) * Vector{0, 1, 1, 1};
  auto c = s.coordinates(v);
  ASSERT_TRUE(c);
  EXPECT_EQ(s.combine(*c), v);
  EXPECT_FALSE(s.coordinates(Vector{0, 0, 0, 1}));
}

TEST(Ratlin, InverseAndSolve) {
  Matrix m{{2, 1}, {1, 1}};
  auto inv = inverse(m);
  ASSERT_TRUE(inv);
  EXPECT_EQ(m * *inv, Matrix::identity(2));
  EXPECT_FALSE(inverse(Matrix{{1, 2}, {2, 4}}));
  auto x = solve_linear(m, Vector{3, 2});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (Vector{1, 1}));
  EXPECT_FALSE(solve_linear(Matrix{{1, 1}, {1, 1}}, Vector{1, 2}));
}

TEST(Ratlin, KronOfIdentities) {
  EXPECT_EQ(kron(Matrix::identity(2), Matrix::identity(3)), Matrix::identity(6));
  Matrix k = kron(Matrix{{1, 2}, {3, 4}}, Matrix{{0, 5}, {6, 7}});
  EXPECT_EQ(k.row(3), (Vector{18, 21, 24, 28}));
}

TEST(Ratlin, RankAgreesWithBareiss) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = rng.uniform(1, 5), c = rng.uniform(1, 5);
    Matrix m(r, c);
    std::int64_t hidden = rng.uniform(1, 3);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = oracle::frac(rng.uniform(-3, 3), hidden);
    if (r > 2) {
      m = Matrix::from_rows({m.row(0), m.row(1), m.row(0) + m.row(1)}, c);
      r = 3;
    }
    EXPECT_EQ(rank(m), oracle::rank(m));
    EXPECT_EQ(kernel(m).dim() + rank(m), c);
    if (r == c) EXPECT_EQ(inverse(m).has_value(), oracle::determinant(m) != 0);
  }
}

TEST(Ratlin, IntersectionDimensionFormula) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = rng.uniform(2, 6);
    std::vector<Vector> a, b;
    for (std::int64_t i = rng.uniform(1, n); i > 0; --i) a.push_back(oracle::random_vector(rng, n, 2));
    for (std::int64_t i = rng.uniform(1, n); i > 0; --i) b.push_back(oracle::random_vector(rng, n, 2));
    Subspace sa = Subspace::span(n, a), sb = Subspace::span(n, b);
    Subspace cap = intersect(sa, sb);
    EXPECT_EQ(cap.dim() + sum(sa, sb).dim(), sa.dim() + sb.dim());
    EXPECT_TRUE(sa.contains(cap));
    EXPECT_TRUE(sb.contains(cap));
  }
}
