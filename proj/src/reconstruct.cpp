#include "segre/reconstruct.hpp"

#include "segre/error.hpp"
#include "segre/squares.hpp"

namespace segre {

namespace {

void finish(Reconstruction& recon) {
  TangentCache cache(recon.instance);
  recon.phi = build_phi(recon, &cache);
  auto inv = inverse(recon.phi);
  if (!inv) throw RankDeficient("reconstruction: Φ is singular");
  recon.phi_inverse = std::move(*inv);
}

}  // namespace

Reconstruction recover_factors(const TensorSpaceInstance& inst, Rng& rng, std::optional<Vector> w0) {
  if (!w0) w0 = inst.base_point();
  if (!w0) w0 = inst.sample_simple(rng);
  if (w0->size() != inst.dim()) throw DimensionMismatch("recover_factors: base point length mismatch");
  if (w0->is_zero()) throw ZeroVector("recover_factors: base point is zero");
  if (!inst.is_simple(*w0)) throw NotSimple("recover_factors: base point is not simple");

  Reconstruction recon{.instance = inst, .w0 = *w0, .W1 = {}, .W2 = {}, .basis_e = {}, .basis_f = {}, .phi = {},
                       .phi_inverse = {}};
  if (inst.quadrics().empty()) {
    recon.trivial = true;
    recon.W1 = Sheet{Subspace::full(inst.dim()), true};
    recon.W2 = Sheet{Subspace::span(inst.dim(), {*w0}), true};
  } else {
    SheetPair pair = sheets_through(inst, *w0, rng);
    recon.W1 = std::move(pair.first);
    recon.W2 = std::move(pair.second);
    recon.samples_used = pair.samples_used;
    recon.restarts = pair.restarts;
  }
  recon.basis_e = recon.W1.subspace.basis_vectors();
  recon.basis_f = recon.W2.subspace.basis_vectors();
  finish(recon);
  return recon;
}

Reconstruction with_bases(const Reconstruction& recon, std::vector<Vector> e, std::vector<Vector> f) {
  if (e.size() != recon.W1.dim() || f.size() != recon.W2.dim())
    throw DimensionMismatch("with_bases: basis sizes do not match the sheets");
  if (Subspace::span(recon.instance.dim(), e) != recon.W1.subspace ||
      Subspace::span(recon.instance.dim(), f) != recon.W2.subspace)
    throw MembershipViolated("with_bases: vectors do not form bases of W1 and W2");
  Reconstruction out = recon;
  out.basis_e = std::move(e);
  out.basis_f = std::move(f);
  finish(out);
  return out;
}

Vector bar_tensor(const Reconstruction& recon, const Vector& w1, const Vector& w2, TangentCache* cache) {
  if (!recon.W1.contains(w1)) throw MembershipViolated("bar_tensor: first argument is not in W1");
  if (!recon.W2.contains(w2)) throw MembershipViolated("bar_tensor: second argument is not in W2");
  if (w1.is_zero() || w2.is_zero()) return Vector(recon.instance.dim());
  if (auto lambda = proportionality(recon.w0, w1)) return *lambda * w2;
  if (auto mu = proportionality(recon.w0, w2)) return *mu * w1;
  return complete_square(recon.instance, recon.w0, w2, w1, cache).d;
}

Matrix build_phi(const Reconstruction& recon, TangentCache* cache) {
  std::vector<Vector> columns;
  columns.reserve(recon.rows() * recon.cols());
  for (const auto& e : recon.basis_e)
    for (const auto& f : recon.basis_f) columns.push_back(bar_tensor(recon, e, f, cache));
  Matrix phi = Matrix::from_columns(columns, recon.instance.dim());
  if (rank(phi) != recon.instance.dim()) throw RankDeficient("build_phi: special basis is dependent");
  return phi;
}

Vector apply_phi(const Reconstruction& recon, const Matrix& coefficients) {
  if (coefficients.rows() != recon.rows() || coefficients.cols() != recon.cols())
    throw DimensionMismatch("apply_phi: coefficient matrix has the wrong shape");
  return recon.phi * coefficients.flatten();
}

Matrix coefficient_matrix(const Reconstruction& recon, const Vector& v) {
  if (v.size() != recon.instance.dim()) throw DimensionMismatch("coefficient_matrix: length mismatch");
  return Matrix::reshape(recon.phi_inverse * v, recon.rows(), recon.cols());
}

std::pair<Vector, Vector> factorize_simple(const Reconstruction& recon, const Vector& v) {
  const std::size_t dim = recon.instance.dim();
  if (v.size() != dim) throw DimensionMismatch("factorize_simple: length mismatch");
  if (v.is_zero()) return {Vector(dim), Vector(dim)};
  if (!recon.instance.is_simple(v)) throw NotSimple("factorize_simple: vector is not simple");

  Matrix c = coefficient_matrix(recon, v);
  if (rank(c) > 1) throw RankViolation("factorize_simple: coefficient matrix has rank above one");
  Vector flat = c.flatten();
  std::size_t lead = flat.leading_index();
  std::size_t i = lead / c.cols(), j = lead % c.cols();
  Vector column = c.col(j);
  column *= Scalar(1) / c(i, j);
  Vector row = c.row(i);

  Vector w1(dim), w2(dim);
  for (std::size_t p = 0; p < recon.rows(); ++p)
    if (sgn(column[p]) != 0) w1 += column[p] * recon.basis_e[p];
  for (std::size_t q = 0; q < recon.cols(); ++q)
    if (sgn(row[q]) != 0) w2 += row[q] * recon.basis_f[q];
  return {w1, w2};
}

std::size_t tensor_rank(const Reconstruction& recon, const Vector& v) { return rank(coefficient_matrix(recon, v)); }

RoundTripReport verify_round_trip(const TensorSpaceInstance& inst, const Reconstruction& recon) {
  const HiddenFactorization& hidden = inst.hidden();
  const std::size_t m = inst.shape().m, n = inst.shape().n, dim = inst.dim();

  RoundTripReport report;
  report.m = m;
  report.n = n;
  report.oracle_calls = inst.counts().oracle_calls();
  report.samples_used = recon.samples_used;
  report.sheet_dims = {recon.W1.dim(), recon.W2.dim()};

  auto fail = [&](std::string why) {
    report.success = false;
    report.message = std::move(why);
    return report;
  };

  if (recon.instance.dim() != dim) return fail("reconstruction belongs to a different space");
  if (inst.base_point() && *inst.base_point() != recon.w0) return fail("base point was not passed through");
  auto factors = hidden.factor(recon.w0);
  if (!factors || recon.w0.is_zero()) return fail("base point is not a nonzero simple vector");
  const Vector alpha0 = factors->first;
  const Vector beta0 = factors->second.normalized();

  std::vector<Vector> first_factor_sheet, second_factor_sheet;
  for (std::size_t i = 0; i < m; ++i) first_factor_sheet.push_back(hidden.embed(Vector::unit(m, i), beta0));
  for (std::size_t k = 0; k < n; ++k) second_factor_sheet.push_back(hidden.embed(alpha0, Vector::unit(n, k)));
  const Subspace hidden1 = Subspace::span(dim, first_factor_sheet);
  const Subspace hidden2 = Subspace::span(dim, second_factor_sheet);

  const bool straight = recon.W1.subspace == hidden1 && recon.W2.subspace == hidden2;
  const bool crossed = recon.W1.subspace == hidden2 && recon.W2.subspace == hidden1;
  if (!straight && !crossed) return fail("recovered sheets differ from the hidden sheets");
  report.swap = !straight;

  // e_j = a_j ⊗ β̂0 recovers a_j as a column of the hidden coefficient matrix
  // and f_k = α0 ⊗ b_k recovers b_k as a row.
  const std::size_t beta_lead = beta0.leading_index();
  const std::size_t alpha_lead = alpha0.leading_index();
  auto first_factor = [&](const Vector& v) { return hidden.unscramble(v).col(beta_lead); };
  auto second_factor = [&](const Vector& v) { return hidden.unscramble(v).row(alpha_lead); };

  std::optional<Scalar> lambda;
  for (std::size_t j = 0; j < recon.rows(); ++j) {
    for (std::size_t k = 0; k < recon.cols(); ++k) {
      const Vector& ej = recon.basis_e[j];
      const Vector& fk = recon.basis_f[k];
      Vector expected = report.swap ? hidden.embed(first_factor(fk), second_factor(ej))
                                    : hidden.embed(first_factor(ej), second_factor(fk));
      Vector actual = recon.phi.col(j * recon.cols() + k);
      auto ratio = proportionality(expected, actual);
      if (!ratio || sgn(*ratio) == 0) return fail("special basis is not a rescaled hidden product basis");
      if (lambda && *lambda != *ratio) return fail("special basis needs more than one scale");
      lambda = ratio;
    }
  }
  report.lambda = *lambda;
  report.success = true;
  return report;
}

}  // namespace segre
