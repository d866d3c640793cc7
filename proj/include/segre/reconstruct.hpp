#pragma once

// Recovery of the factor pair (W1, W2) through a base point w0, the derived
// product w1 ⊗̄ w2 and the induced isomorphism Φ: W1 ⊗ W2 -> V.
//
// Coefficient matrices are dim W1 x dim W2 and flatten row-major, so column
// j * dim W2 + k of Φ is e_j ⊗̄ f_k.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "segre/foliation.hpp"
#include "segre/random.hpp"
#include "segre/ratlin.hpp"
#include "segre/tensor_space.hpp"

namespace segre {

struct Reconstruction {
  TensorSpaceInstance instance;
  Vector w0;
  Sheet W1;
  Sheet W2;
  std::vector<Vector> basis_e;
  std::vector<Vector> basis_f;
  Matrix phi;
  Matrix phi_inverse;
  bool trivial = false;
  std::size_t samples_used = 0;
  std::size_t restarts = 0;

  std::size_t rows() const { return basis_e.size(); }
  std::size_t cols() const { return basis_f.size(); }
};

/// Sheets through w0 (or the instance base point, or a fresh sample), with
/// canonical bases and Φ built eagerly. Shapes with no quadrics take W1 = V
/// and W2 = ℝ w0.
Reconstruction recover_factors(const TensorSpaceInstance& inst, Rng& rng, std::optional<Vector> w0 = std::nullopt);

/// Same sheets and base point with caller-chosen bases; rebuilds Φ.
Reconstruction with_bases(const Reconstruction& recon, std::vector<Vector> e, std::vector<Vector> f);

/// w1 ⊗̄ w2. Throws MembershipViolated when w1 ∉ W1 or w2 ∉ W2.
Vector bar_tensor(const Reconstruction& recon, const Vector& w1, const Vector& w2, TangentCache* cache = nullptr);

/// Columns e_j ⊗̄ f_k. Throws RankDeficient if they are dependent.
Matrix build_phi(const Reconstruction& recon, TangentCache* cache = nullptr);

/// Φ applied to a dim W1 x dim W2 coefficient matrix.
Vector apply_phi(const Reconstruction& recon, const Matrix& coefficients);
Matrix coefficient_matrix(const Reconstruction& recon, const Vector& v);

/// (w1, w2) with w1 ⊗̄ w2 == v and the first nonzero coefficient of w1 equal
/// to 1; (0, 0) for v == 0. Throws NotSimple, or RankViolation if Φ⁻¹ v has
/// rank above one.
std::pair<Vector, Vector> factorize_simple(const Reconstruction& recon, const Vector& v);

std::size_t tensor_rank(const Reconstruction& recon, const Vector& v);

struct RoundTripReport {
  bool success = false;
  std::size_t m = 0;
  std::size_t n = 0;
  /// W1 matches the hidden α0 ⊗ V2 sheet rather than V1 ⊗ β0.
  bool swap = false;
  /// E_jk == lambda * (a_j ⊗ b_k) where e_j, f_k correspond to hidden a_j, b_k.
  Scalar lambda;
  std::uint64_t oracle_calls = 0;
  std::size_t samples_used = 0;
  std::vector<std::size_t> sheet_dims;
  std::string message;
};

/// Compares a reconstruction with the concealed factorization of `inst`.
RoundTripReport verify_round_trip(const TensorSpaceInstance& inst, const Reconstruction& recon);

}  // namespace segre
