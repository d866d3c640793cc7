#pragma once

// The functors ⊗ (pairs of vector spaces to tensor spaces) and D (tensor
// spaces back to pairs of sheets), acting on objects and morphisms, and the
// checks that Ψ: 1 -> D∘⊗ and Φ: ⊗∘D -> 1 are natural.

#include <optional>
#include <utility>

#include "segre/ratlin.hpp"
#include "segre/reconstruct.hpp"
#include "segre/tensor_space.hpp"

namespace segre {

struct TvecMorphism {
  const TensorSpaceInstance* source = nullptr;
  const TensorSpaceInstance* target = nullptr;
  Matrix map;  // target dim x source dim
  bool certified = false;
};

struct VecPairMorphism {
  Matrix g;  // m x m
  Matrix h;  // n x n
};

/// scramble_B * kron(g, h) * scramble_A⁻¹, certified with is_tvec_morphism.
/// Throws DimensionMismatch, or PreconditionViolated when g or h is singular.
TvecMorphism tensor_on_morphisms(const TensorSpaceInstance& a, const TensorSpaceInstance& b,
                                 const VecPairMorphism& pm);

/// Invertible, and the pulled-back target quadrics span exactly the span of
/// the source quadrics.
bool is_tvec_morphism(const TvecMorphism& f);

/// second ∘ first
TvecMorphism compose(const TvecMorphism& second, const TvecMorphism& first);
VecPairMorphism compose(const VecPairMorphism& second, const VecPairMorphism& first);

/// The transpose of hidden coefficient matrices, carried from a to b. Needs
/// m == n; it preserves S but exchanges the foliations.
TvecMorphism swap_morphism(const TensorSpaceInstance& a, const TensorSpaceInstance& b);

struct PointedSheets {
  Sheet first;
  Sheet second;
  Vector base_point;
};

PointedSheets D_on_objects(const Reconstruction& recon);

/// Restrictions of F to the sheets, in the canonical sheet bases. When F
/// carries W1 onto the target W2 (the swap), `crossed` is set and f1 maps
/// W1 -> W2', f2 maps W2 -> W1'.
struct SheetMorphism {
  Matrix f1;
  Matrix f2;
  bool crossed = false;
};

/// Throws SheetNotPreserved when an image sheet is not a target sheet, and
/// PreconditionViolated when `require_pointed` and F(w0) != w0'.
SheetMorphism D_on_morphism(const TvecMorphism& f, const Reconstruction& source, const Reconstruction& target,
                            bool require_pointed = true);

/// second ∘ first, following crossings.
SheetMorphism compose(const SheetMorphism& second, const SheetMorphism& first);

/// b with its base point replaced by α0' ⊗ β0' (verification context).
TensorSpaceInstance pointed_target(const TensorSpaceInstance& b, const Vector& alpha0, const Vector& beta0);

/// Ψ for ((A, α0), (B, β0)) inside V = A ⊗ B, as ambient-coordinate columns:
/// leg1 sends α to α ⊗ β0 and leg2 sends β to α0 ⊗ β.
struct PsiLegs {
  Matrix leg1;  // dim V x m
  Matrix leg2;  // dim V x n
};

PsiLegs build_psi(const TensorSpaceInstance& inst, const Vector& alpha0, const Vector& beta0);

/// Ψ' ∘ (g, h) == D(⊗(g, h)) ∘ Ψ, each leg compared in sheet coordinates.
bool psi_commutes(const PsiLegs& source_psi, const PsiLegs& target_psi, const VecPairMorphism& pm,
                  const SheetMorphism& d, const Reconstruction& source, const Reconstruction& target);

/// Builds the pointed pair ((A, α0), (B, β0)) from the base point of `a`, the
/// image object under (g, h), both reconstructions and checks Ψ.
bool check_psi_naturality(const TensorSpaceInstance& a, const TensorSpaceInstance& b, const VecPairMorphism& pm,
                          std::uint64_t seed);

struct PhiNaturality {
  bool holds = false;
  /// F Φ = kappa Φ' P (f1 ⊗ f2); 1 in the pointed case.
  std::optional<Scalar> kappa;
  bool crossed = false;
};

/// With (f1, f2) = D(F), compares F Φ with Φ' P (f1 ⊗ f2), P the factor
/// swap when F is crossed. Pointed mode requires kappa == 1.
PhiNaturality check_phi_naturality(const TvecMorphism& f, const Reconstruction& source, const Reconstruction& target,
                                   bool pointed = true);

/// ⊗(g, h) == ⊗(λg, h/λ) while (g, h) != (λg, h/λ) for λ != 1.
bool gl1_demo(const TensorSpaceInstance& a, const TensorSpaceInstance& b, const VecPairMorphism& pm,
              const Scalar& lambda);

}  // namespace segre
