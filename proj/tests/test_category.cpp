#include <gtest/gtest.h>

#include "oracles.hpp"
#include "segre/category.hpp"
#include "segre/error.hpp"

using namespace segre;

namespace {

struct Fixture {
  TensorSpaceInstance a;
  TensorSpaceInstance b;
  VecPairMorphism pm;
  Vector alpha0, beta0;
};

Fixture make(FactorShape shape, std::uint64_t seed) {
  auto a = TensorSpaceInstance::generate(shape, seed, true);
  auto factors = a.hidden().factor(*a.base_point());
  Matrix g = Matrix::identity(shape.m), h = Matrix::identity(shape.n);
  for (std::size_t i = 0; i + 1 < shape.m; ++i) g(i, i + 1) = 2;
  for (std::size_t i = 0; i + 1 < shape.n; ++i) h(i + 1, i) = -1;
  h(0, 0) = 3;
  VecPairMorphism pm{g, h};
  auto b = pointed_target(TensorSpaceInstance::generate(shape, seed + 1, false), g * factors->first,
                          h * factors->second);
  return Fixture{a, b, pm, factors->first, factors->second};
}

}  // namespace

TEST(Category, TensorOnMorphismsIsCertified) {
  Fixture fx = make({2, 3}, 1);
  TvecMorphism f = tensor_on_morphisms(fx.a, fx.b, fx.pm);
  EXPECT_TRUE(f.certified);
  EXPECT_EQ(f.map * *fx.a.base_point(), *fx.b.base_point());
  Rng rng(2);
  for (int i = 0; i < 10; ++i) EXPECT_TRUE(fx.b.is_simple(f.map * fx.a.sample_simple(rng)));
}

TEST(Category, RandomMapIsNotCertified) {
  auto a = TensorSpaceInstance::generate({2, 2}, 3, false);
  Matrix shear = Matrix::identity(4);
  shear(0, 3) = 1;
  EXPECT_FALSE(is_tvec_morphism(TvecMorphism{&a, &a, a.hidden().scramble * shear * a.hidden().scramble_inverse}));
}

TEST(Category, SingularPairRejected) {
  Fixture fx = make({2, 2}, 4);
  VecPairMorphism bad{Matrix(2, 2), Matrix::identity(2)};
  EXPECT_THROW(tensor_on_morphisms(fx.a, fx.b, bad), PreconditionViolated);
  auto other = TensorSpaceInstance::generate({2, 3}, 4, false);
  EXPECT_THROW(tensor_on_morphisms(fx.a, other, fx.pm), DimensionMismatch);
}

TEST(Category, PsiAndPhiNaturality) {
  for (FactorShape shape : {FactorShape{2, 2}, FactorShape{2, 3}, FactorShape{3, 2}}) {
    Fixture fx = make(shape, 10 + shape.m + shape.n);
    Rng rng(5);
    Reconstruction ra = recover_factors(fx.a, rng), rb = recover_factors(fx.b, rng);
    TvecMorphism f = tensor_on_morphisms(fx.a, fx.b, fx.pm);
    SheetMorphism d = D_on_morphism(f, ra, rb);
    EXPECT_TRUE(psi_commutes(build_psi(fx.a, fx.alpha0, fx.beta0),
                             build_psi(fx.b, fx.pm.g * fx.alpha0, fx.pm.h * fx.beta0), fx.pm, d, ra, rb));
    PhiNaturality phi = check_phi_naturality(f, ra, rb);
    EXPECT_TRUE(phi.holds);
    EXPECT_EQ(*phi.kappa, 1);
    EXPECT_TRUE(check_psi_naturality(fx.a, fx.b, fx.pm, 6));
  }
}

TEST(Category, DRequiresBasePointPreserved) {
  Fixture fx = make({2, 2}, 20);
  Rng rng(1);
  Reconstruction ra = recover_factors(fx.a, rng);
  auto moved = fx.b.with_base_point(Scalar(2) * *fx.b.base_point());
  Reconstruction rm = recover_factors(moved, rng);
  TvecMorphism f = tensor_on_morphisms(fx.a, moved, fx.pm);
  EXPECT_THROW(D_on_morphism(f, ra, rm), PreconditionViolated);
  PhiNaturality phi = check_phi_naturality(f, ra, rm, false);
  EXPECT_TRUE(phi.holds);
  EXPECT_EQ(*phi.kappa, 2);
}

TEST(Category, SwapMorphismCrosses) {
  auto a = TensorSpaceInstance::generate({2, 2}, 30, false);
  auto sym = a.with_base_point(embed_simple(a, Vector{1, 2}, Vector{1, 2}));
  TvecMorphism swap = swap_morphism(sym, sym);
  EXPECT_TRUE(swap.certified);
  Rng rng(2);
  Reconstruction r = recover_factors(sym, rng);
  SheetMorphism d = D_on_morphism(swap, r, r);
  EXPECT_TRUE(d.crossed);
  EXPECT_TRUE(check_phi_naturality(swap, r, r).holds);
  SheetMorphism twice = compose(d, d);
  EXPECT_FALSE(twice.crossed);
  EXPECT_EQ(twice.f1, Matrix::identity(2));
  EXPECT_EQ(twice.f2, Matrix::identity(2));
  EXPECT_THROW(swap_morphism(TensorSpaceInstance::generate({2, 3}, 1, false),
                             TensorSpaceInstance::generate({2, 3}, 2, false)),
               DimensionMismatch);
}

TEST(Category, Gl1Obstruction) {
  Fixture fx = make({2, 3}, 40);
  EXPECT_TRUE(gl1_demo(fx.a, fx.b, fx.pm, oracle::frac(-2, 3)));
  EXPECT_TRUE(gl1_demo(fx.a, fx.b, fx.pm, 1));
  EXPECT_THROW(gl1_demo(fx.a, fx.b, fx.pm, 0), PreconditionViolated);
}

TEST(Category, FunctorIdentity) {
  Fixture fx = make({3, 2}, 50);
  Rng rng(3);
  Reconstruction ra = recover_factors(fx.a, rng);
  TvecMorphism id = tensor_on_morphisms(fx.a, fx.a, {Matrix::identity(3), Matrix::identity(2)});
  EXPECT_EQ(id.map, Matrix::identity(6));
  SheetMorphism d = D_on_morphism(id, ra, ra);
  EXPECT_FALSE(d.crossed);
  EXPECT_EQ(d.f1, Matrix::identity(ra.rows()));
  EXPECT_EQ(d.f2, Matrix::identity(ra.cols()));
}
