#pragma once

// Scrambled tensor-product instances. An instance is a vector space of
// dimension m*n whose hidden factorization is concealed by an invertible
// change of coordinates. The cone S of simple vectors is exposed three ways:
// a membership oracle, the list of quadrics cutting it out, and a sampler.
// Reconstruction code uses only those; `hidden()` exists for verification.

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "segre/random.hpp"
#include "segre/ratlin.hpp"

namespace segre {

inline constexpr std::int64_t kDefaultSampleRange = 10;

struct FactorShape {
  std::size_t m = 1;
  std::size_t n = 1;

  std::size_t dim() const { return m * n; }
  bool trivial() const { return m == 1 || n == 1; }
  /// C(m,2) * C(n,2): the number of independent 2x2 minors.
  std::size_t quadric_count() const { return (m * (m - 1) / 2) * (n * (n - 1) / 2); }
  friend bool operator==(const FactorShape&, const FactorShape&) = default;
};

/// Integer representative z of a rational vector v, with v == z / scale.
struct IntegerImage {
  std::vector<Integer> z;
  Integer scale = 1;

  static IntegerImage of(const Vector& v);
};

class QuadraticForm {
 public:
  explicit QuadraticForm(Matrix gram);

  const Matrix& gram() const { return gram_; }
  std::size_t dim() const { return gram_.rows(); }

  /// v^T Q v
  Scalar operator()(const Vector& v) const;
  /// u^T Q w, so that Q(u+w) = Q(u) + Q(w) + 2 B(u,w).
  Scalar polar(const Vector& u, const Vector& w) const;
  /// Q v
  Vector polar_row(const Vector& v) const;

  bool vanishes_at(const IntegerImage& v) const;
  /// Integer vector positively proportional to Q v.
  std::vector<Integer> polar_direction(const IntegerImage& v) const;

  // Integer kernels: for integer vectors these return denom() * Q(z) and
  // denom() * B(u, w) exactly.
  const Integer& denom() const { return denom_; }
  Integer quadratic(const std::vector<Integer>& z) const;
  Integer bilinear(const std::vector<Integer>& u, const std::vector<Integer>& w) const;

 private:
  Matrix gram_;
  std::vector<Integer> scaled_;  // gram * denom, row-major
  Integer denom_ = 1;
};

struct HiddenFactorization {
  FactorShape shape;
  Matrix scramble;
  Matrix scramble_inverse;

  /// scramble * flatten(alpha beta^T)
  Vector embed(const Vector& alpha, const Vector& beta) const;
  /// The m x n coefficient matrix of v in hidden coordinates.
  Matrix unscramble(const Vector& v) const;
  /// (alpha, beta) with v == embed(alpha, beta) and the first nonzero entry
  /// of alpha equal to 1; nullopt if v is not simple, (0, 0) if v is zero.
  std::optional<std::pair<Vector, Vector>> factor(const Vector& v) const;
};

struct OracleCounts {
  std::uint64_t membership = 0;
  std::uint64_t linearizations = 0;
  std::uint64_t samples = 0;

  std::uint64_t oracle_calls() const { return membership + linearizations; }
};

struct GenerateOptions {
  std::int64_t scramble_range = 3;
  /// Test hook: flips the sign of the cross term of the first quadric, which
  /// breaks quadric soundness.
  bool inject_fault = false;
};

class TensorSpaceInstance {
 public:
  static TensorSpaceInstance generate(FactorShape shape, std::uint64_t seed, bool pointed,
                                      const GenerateOptions& options = {});
  /// Rebuilds an instance from a stored scramble. Throws PreconditionViolated
  /// when the scramble is singular or the base point is not simple.
  static TensorSpaceInstance from_scramble(FactorShape shape, std::uint64_t seed, Matrix scramble,
                                           std::optional<Vector> base_point = std::nullopt);

  /// Same space and cone, distinguished point replaced. `v` must be simple.
  TensorSpaceInstance with_base_point(Vector v) const;

  const FactorShape& shape() const { return shape_; }
  std::size_t dim() const { return shape_.dim(); }
  std::uint64_t seed() const { return seed_; }
  const std::vector<QuadraticForm>& quadrics() const { return quadrics_; }
  const std::optional<Vector>& base_point() const { return base_point_; }
  bool fault_injected() const { return fault_; }

  /// Verification-only access to the concealed factorization.
  const HiddenFactorization& hidden() const { return hidden_; }

  /// True iff every quadric vanishes at v. Zero counts as simple.
  bool is_simple(const Vector& v) const;
  Vector sample_simple(Rng& rng, std::int64_t range = kDefaultSampleRange) const;

  OracleCounts counts() const;
  void note_linearization() const;

 private:
  TensorSpaceInstance() = default;
  void build_quadrics();

  struct Stats {
    std::atomic<std::uint64_t> membership{0};
    std::atomic<std::uint64_t> linearizations{0};
    std::atomic<std::uint64_t> samples{0};
  };

  FactorShape shape_;
  std::uint64_t seed_ = 0;
  bool fault_ = false;
  HiddenFactorization hidden_;
  std::vector<QuadraticForm> quadrics_;
  std::optional<Vector> base_point_;
  std::shared_ptr<Stats> stats_ = std::make_shared<Stats>();
};

/// Test-oracle embedding alpha ⊗ beta. Reconstruction code never calls this.
Vector embed_simple(const TensorSpaceInstance& inst, const Vector& alpha, const Vector& beta);

/// Decides whether sum_j a_j ⊗ b_j vanishes using only the factors: redundant
/// a_j are first rewritten in terms of an independent subset, the b's are
/// collected per independent a, and the sum is zero iff every collected b is.
bool rule_says_zero(const std::vector<Vector>& a_list, const std::vector<Vector>& b_list);

/// True iff the factor-level decision agrees with the embedded sum.
bool verify_rule(const TensorSpaceInstance& inst, const std::vector<Vector>& a_list,
                 const std::vector<Vector>& b_list);

}  // namespace segre
