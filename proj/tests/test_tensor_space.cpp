#include <gtest/gtest.h>

#include "oracles.hpp"
#include "segre/error.hpp"
#include "segre/tensor_space.hpp"

using namespace segre;

namespace {

TensorSpaceInstance identity22() { return TensorSpaceInstance::from_scramble({2, 2}, 0, Matrix::identity(4)); }

}  // namespace

TEST(TensorSpace, QuadricCounts) {
  EXPECT_EQ(TensorSpaceInstance::generate({2, 2}, 7, false).quadrics().size(), 1u);
  EXPECT_EQ(TensorSpaceInstance::generate({4, 3}, 1, false).quadrics().size(), 18u);
  EXPECT_EQ(TensorSpaceInstance::generate({1, 5}, 1, false).quadrics().size(), 0u);
  EXPECT_EQ(TensorSpaceInstance::generate({3, 3}, 1, false).quadrics().size(), 9u);
}

TEST(TensorSpace, GenerationIsDeterministic) {
  auto a = TensorSpaceInstance::generate({3, 2}, 42, true);
  auto b = TensorSpaceInstance::generate({3, 2}, 42, true);
  EXPECT_EQ(a.hidden().scramble, b.hidden().scramble);
  EXPECT_EQ(*a.base_point(), *b.base_point());
  auto c = TensorSpaceInstance::generate({3, 2}, 43, true);
  EXPECT_NE(a.hidden().scramble, c.hidden().scramble);
}

TEST(TensorSpace, ScrambleIsInvertible) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto inst = TensorSpaceInstance::generate({3, 3}, seed, false);
    EXPECT_NE(oracle::determinant(inst.hidden().scramble), 0);
    EXPECT_EQ(inst.hidden().scramble * inst.hidden().scramble_inverse, Matrix::identity(9));
  }
}

TEST(TensorSpace, IdentityScrambleMembership) {
  auto inst = identity22();
  EXPECT_TRUE(inst.is_simple(Vector{1, 0, 0, 0}));
  EXPECT_TRUE(inst.is_simple(Vector{1, 2, 3, 6}));
  EXPECT_FALSE(inst.is_simple(Vector{1, 0, 0, 1}));
  EXPECT_TRUE(inst.is_simple(Vector{0, 0, 0, 0}));
}

TEST(TensorSpace, EmbedMatchesOuterProduct) {
  Rng rng(5);
  for (FactorShape shape : {FactorShape{2, 3}, FactorShape{3, 2}, FactorShape{4, 4}}) {
    auto inst = TensorSpaceInstance::generate(shape, rng.next(), false);
    for (int i = 0; i < 10; ++i) {
      Vector a = oracle::random_vector(rng, shape.m), b = oracle::random_vector(rng, shape.n);
      Vector v = embed_simple(inst, a, b);
      EXPECT_EQ(v, oracle::outer_embed(inst, a, b));
      EXPECT_TRUE(inst.is_simple(v));
      auto f = inst.hidden().factor(v);
      ASSERT_TRUE(f);
      EXPECT_EQ(embed_simple(inst, f->first, f->second), v);
      EXPECT_EQ(f->first[f->first.leading_index()], 1);
    }
  }
}

TEST(TensorSpace, MembershipAgreesWithHiddenRank) {
  Rng rng(6);
  for (FactorShape shape : {FactorShape{2, 2}, FactorShape{2, 3}, FactorShape{3, 3}, FactorShape{4, 2}}) {
    auto inst = TensorSpaceInstance::generate(shape, rng.next(), false);
    for (int i = 0; i < 40; ++i) {
      Vector v = (i % 2) ? inst.sample_simple(rng) : oracle::random_vector(rng, inst.dim(), 2);
      EXPECT_EQ(inst.is_simple(v), oracle::hidden_rank(inst, v) <= 1);
    }
  }
}

TEST(TensorSpace, QuadricsVanishOnSamples) {
  Rng rng(7);
  auto inst = TensorSpaceInstance::generate({3, 4}, 9, false);
  for (int i = 0; i < 20; ++i) {
    Vector v = inst.sample_simple(rng);
    for (const auto& q : inst.quadrics()) EXPECT_EQ(q(v), 0);
  }
}

TEST(TensorSpace, PolarizationIdentity) {
  Rng rng(8);
  auto inst = TensorSpaceInstance::generate({2, 3}, 4, false);
  for (int i = 0; i < 10; ++i) {
    Vector u = oracle::random_vector(rng, 6), w = oracle::random_vector(rng, 6);
    for (const auto& q : inst.quadrics()) EXPECT_EQ(q(u + w), q(u) + q(w) + 2 * q.polar(u, w));
  }
}

TEST(TensorSpace, WithBasePointRejectsNonSimple) {
  auto inst = identity22();
  EXPECT_THROW(inst.with_base_point(Vector{1, 0, 0, 1}), PreconditionViolated);
  EXPECT_NO_THROW(inst.with_base_point(Vector{1, 1, 1, 1}));
}

TEST(TensorSpace, SingularScrambleRejected) {
  Matrix singular = Matrix::identity(4);
  singular(3, 3) = 0;
  EXPECT_THROW(TensorSpaceInstance::from_scramble({2, 2}, 0, singular), PreconditionViolated);
}

TEST(TensorSpace, DimensionMismatch) {
  auto inst = identity22();
  EXPECT_THROW(inst.is_simple(Vector{1, 0, 0}), DimensionMismatch);
}

TEST(TensorSpace, RuleOnWorkedExample) {
  // a1 ⊗ b1 + a2 ⊗ b2 - (a1 + a2) ⊗ b1 = a2 ⊗ (b2 - b1), zero iff b1 == b2
  Vector a1{1, 0}, a2{0, 1}, b1{1, 2}, b2{1, 2}, b3{2, 1};
  EXPECT_TRUE(rule_says_zero({a1, a2, a1 + a2}, {b1, b2, -b1}));
  EXPECT_FALSE(rule_says_zero({a1, a2, a1 + a2}, {b1, b3, -b1}));
  auto inst = TensorSpaceInstance::generate({2, 2}, 3, false);
  EXPECT_TRUE(verify_rule(inst, {a1, a2, a1 + a2}, {b1, b3, -b1}));
}

TEST(TensorSpace, CountersAdvance) {
  auto inst = identity22();
  auto before = inst.counts().membership;
  inst.is_simple(Vector{1, 0, 0, 0});
  EXPECT_EQ(inst.counts().membership, before + 1);
}

TEST(TensorSpace, FaultInjectionBreaksSoundness) {
  GenerateOptions options;
  options.inject_fault = true;
  auto inst = TensorSpaceInstance::generate({2, 2}, 3, false, options);
  EXPECT_TRUE(inst.fault_injected());
  Rng rng(1);
  bool broken = false;
  for (int i = 0; i < 10 && !broken; ++i) {
    Vector a = oracle::random_vector(rng, 2), b = oracle::random_vector(rng, 2);
    broken = !inst.is_simple(embed_simple(inst, a, b));
  }
  EXPECT_TRUE(broken);
}
