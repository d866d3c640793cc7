#include <gtest/gtest.h>

#include "oracles.hpp"
#include "segre/error.hpp"
#include "segre/reconstruct.hpp"

using namespace segre;

namespace {

Reconstruction recover(FactorShape shape, std::uint64_t seed, bool pointed = true) {
  auto inst = TensorSpaceInstance::generate(shape, seed, pointed);
  Rng rng(seed + 1);
  return recover_factors(inst, rng);
}

}  // namespace

TEST(Reconstruct, RoundTripAcrossShapes) {
  for (FactorShape shape : {FactorShape{2, 2}, FactorShape{2, 3}, FactorShape{3, 2}, FactorShape{4, 3},
                            FactorShape{2, 6}, FactorShape{3, 3}}) {
    Reconstruction recon = recover(shape, 100 + shape.m * 10 + shape.n);
    RoundTripReport report = verify_round_trip(recon.instance, recon);
    EXPECT_TRUE(report.success) << shape.m << "x" << shape.n << ": " << report.message;
    EXPECT_NE(report.lambda, 0);
    std::size_t big = std::max(shape.m, shape.n), small = std::min(shape.m, shape.n);
    EXPECT_EQ(report.sheet_dims, (std::vector<std::size_t>{big, small}));
    if (shape.m < shape.n) EXPECT_TRUE(report.swap);
    if (shape.m > shape.n) EXPECT_FALSE(report.swap);
  }
}

TEST(Reconstruct, SheetsAreHiddenSheets) {
  Reconstruction recon = recover({3, 4}, 8);
  auto [s1, s2] = oracle::hidden_sheets(recon.instance, recon.w0);
  EXPECT_EQ(recon.W1.subspace, s2);
  EXPECT_EQ(recon.W2.subspace, s1);
  EXPECT_EQ(recon.w0, *recon.instance.base_point());
}

TEST(Reconstruct, TrivialShape) {
  Reconstruction recon = recover({1, 5}, 3);
  EXPECT_TRUE(recon.trivial);
  EXPECT_EQ(recon.W1.dim(), 5u);
  EXPECT_EQ(recon.W2.dim(), 1u);
  RoundTripReport report = verify_round_trip(recon.instance, recon);
  EXPECT_TRUE(report.success) << report.message;
  EXPECT_EQ(report.sheet_dims, (std::vector<std::size_t>{5, 1}));
}

TEST(Reconstruct, BarTensorOfBasePoint) {
  Reconstruction recon = recover({2, 3}, 4);
  EXPECT_EQ(bar_tensor(recon, recon.w0, recon.w0), recon.w0);
}

TEST(Reconstruct, BarTensorIsBilinear) {
  Reconstruction recon = recover({3, 3}, 5);
  Rng rng(9);
  auto random_in = [&](const std::vector<Vector>& basis) {
    Vector v(recon.instance.dim());
    for (const auto& b : basis) v += Scalar(rng.uniform(-3, 3)) * b;
    return v;
  };
  for (int i = 0; i < 5; ++i) {
    Vector x = random_in(recon.basis_e), y = random_in(recon.basis_e), w = random_in(recon.basis_f);
    Scalar s = rng.uniform(-4, 4);
    EXPECT_EQ(bar_tensor(recon, x + s * y, w), bar_tensor(recon, x, w) + s * bar_tensor(recon, y, w));
    EXPECT_TRUE(recon.instance.is_simple(bar_tensor(recon, x, w)));
  }
}

TEST(Reconstruct, BarTensorRejectsOutsideSheets) {
  Reconstruction recon = recover({2, 2}, 6);
  Vector outside = recon.instance.hidden().embed(Vector{1, 0}, Vector{1, 0}) +
                   recon.instance.hidden().embed(Vector{0, 1}, Vector{0, 1});
  EXPECT_THROW(bar_tensor(recon, outside, recon.w0), MembershipViolated);
}

TEST(Reconstruct, PhiIsInvertibleAndFactorizes) {
  Reconstruction recon = recover({4, 2}, 7);
  EXPECT_EQ(recon.phi * recon.phi_inverse, Matrix::identity(8));
  Rng rng(10);
  for (int i = 0; i < 10; ++i) {
    Vector v = recon.instance.sample_simple(rng);
    auto [w1, w2] = factorize_simple(recon, v);
    EXPECT_EQ(bar_tensor(recon, w1, w2), v);
    EXPECT_EQ(tensor_rank(recon, v), 1u);
  }
  EXPECT_EQ(tensor_rank(recon, Vector(8)), 0u);
}

TEST(Reconstruct, TensorRankMatchesHiddenRank) {
  Reconstruction recon = recover({3, 3}, 11);
  Rng rng(12);
  for (int i = 0; i < 20; ++i) {
    Vector v = oracle::random_vector(rng, 9, 3);
    EXPECT_EQ(tensor_rank(recon, v), oracle::hidden_rank(recon.instance, v));
  }
}

TEST(Reconstruct, FactorizeRejectsEntangled) {
  Reconstruction recon = recover({2, 2}, 13);
  Vector bell = recon.instance.hidden().embed(Vector{1, 0}, Vector{1, 0}) +
                recon.instance.hidden().embed(Vector{0, 1}, Vector{0, 1});
  EXPECT_THROW(factorize_simple(recon, bell), NotSimple);
}

TEST(Reconstruct, WithBasesRebuildsPhi) {
  Reconstruction recon = recover({2, 3}, 14);
  std::vector<Vector> e = recon.basis_e;
  e[0] = Scalar(2) * e[0] + e[1];
  Reconstruction other = with_bases(recon, e, recon.basis_f);
  EXPECT_EQ(other.phi * other.phi_inverse, Matrix::identity(6));
  EXPECT_TRUE(verify_round_trip(other.instance, other).success);
  std::vector<Vector> bad = recon.basis_e;
  bad[0] = bad[1];
  EXPECT_THROW(with_bases(recon, bad, recon.basis_f), MembershipViolated);
}

TEST(Reconstruct, RejectsNonSimpleBasePoint) {
  auto inst = TensorSpaceInstance::generate({2, 2}, 15, false);
  Vector bell = inst.hidden().embed(Vector{1, 0}, Vector{1, 0}) + inst.hidden().embed(Vector{0, 1}, Vector{0, 1});
  Rng rng(1);
  EXPECT_THROW(recover_factors(inst, rng, bell), NotSimple);
  EXPECT_THROW(recover_factors(inst, rng, Vector(4)), ZeroVector);
}

TEST(Reconstruct, DeterministicForSeed) {
  Reconstruction a = recover({3, 2}, 16), b = recover({3, 2}, 16);
  EXPECT_EQ(a.phi, b.phi);
  EXPECT_EQ(a.W1, b.W1);
}
