#include <gtest/gtest.h>

#include "oracles.hpp"
#include "segre/error.hpp"
#include "segre/squares.hpp"

using namespace segre;

TEST(Squares, IdentityScrambleGeneric) {
  auto inst = TensorSpaceInstance::from_scramble({2, 2}, 0, Matrix::identity(4));
  // a = e1⊗e1, b = e1⊗e2, c = e2⊗e1 completes to e2⊗e2
  SquareCompletion done = complete_square(inst, Vector{1, 0, 0, 0}, Vector{0, 1, 0, 0}, Vector{0, 0, 1, 0});
  EXPECT_EQ(done.d, (Vector{0, 0, 0, 1}));
  EXPECT_EQ(done.t, 1);
  EXPECT_EQ(done.kind, SquareCase::kGeneric);
  EXPECT_STREQ(to_string(done.kind), "generic");
}

TEST(Squares, MatchesHiddenForm) {
  Rng rng(21);
  for (std::size_t m = 2; m <= 4; ++m)
    for (std::size_t n = 2; n <= 4; ++n) {
      auto inst = TensorSpaceInstance::generate({m, n}, rng.next(), false);
      for (int i = 0; i < 5; ++i) {
        Vector a0 = oracle::random_vector(rng, m), a1 = oracle::random_vector(rng, m);
        Vector b0 = oracle::random_vector(rng, n), b1 = oracle::random_vector(rng, n);
        if (proportionality(a0, a1) || proportionality(b0, b1)) continue;
        Vector a = oracle::outer_embed(inst, a0, b0), b = oracle::outer_embed(inst, a0, b1);
        Vector c = oracle::outer_embed(inst, a1, b0);
        SquareCompletion done = complete_square(inst, a, b, c);
        EXPECT_EQ(done.d, oracle::outer_embed(inst, a1, b1));
        EXPECT_TRUE(is_square(inst, {a, b, c, done.d}));
        EXPECT_EQ(oracle::hidden_rank(inst, a + b + c + done.d), 1u);
      }
    }
}

TEST(Squares, SpecialCases) {
  auto inst = TensorSpaceInstance::generate({3, 2}, 5, false);
  Vector a0{1, 2, -1}, b0{1, 3}, a1{0, 1, 1}, b1{2, -1};
  Vector a = embed_simple(inst, a0, b0);
  Vector b = embed_simple(inst, a0, b1), c = embed_simple(inst, a1, b0);
  Scalar lambda = oracle::frac(-3, 2), mu = 5;

  SquareCompletion row = complete_square(inst, a, b, lambda * a);
  EXPECT_EQ(row.d, lambda * b);
  EXPECT_EQ(row.kind, SquareCase::kScaledRow);

  SquareCompletion column = complete_square(inst, a, mu * a, c);
  EXPECT_EQ(column.d, mu * c);
  EXPECT_EQ(column.kind, SquareCase::kScaledColumn);

  SquareCompletion both = complete_square(inst, a, mu * a, lambda * a);
  EXPECT_EQ(both.d, (lambda * mu) * a);
  EXPECT_EQ(both.kind, SquareCase::kScaledBoth);
}

TEST(Squares, Preconditions) {
  auto inst = TensorSpaceInstance::from_scramble({2, 2}, 0, Matrix::identity(4));
  Vector e11{1, 0, 0, 0}, e12{0, 1, 0, 0}, e21{0, 0, 1, 0}, e22{0, 0, 0, 1};
  EXPECT_THROW(complete_square(inst, Vector(4), e12, e21), PreconditionViolated);
  EXPECT_THROW(complete_square(inst, e11, e22, e21), PreconditionViolated);
  EXPECT_THROW(complete_square(inst, e11, e12, e12 + e11), PreconditionViolated);
  EXPECT_THROW(complete_square(inst, e11 + e22, e12, e21), PreconditionViolated);
  EXPECT_THROW(complete_square(inst, e11, e12, Vector{1, 0}), DimensionMismatch);
}

TEST(Squares, UniquenessOnIdentityScramble) {
  auto inst = TensorSpaceInstance::from_scramble({2, 2}, 0, Matrix::identity(4));
  Vector a{1, 0, 0, 0}, b{0, 1, 0, 0}, c{0, 0, 1, 0};
  for (int s = -3; s <= 3; ++s) {
    Vector d{0, 0, 0, s};
    EXPECT_EQ(is_square(inst, {a, b, c, d}), s == 1);
  }
}
