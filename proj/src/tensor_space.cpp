#include "segre/tensor_space.hpp"

#include <algorithm>

#include "segre/error.hpp"

namespace segre {

IntegerImage IntegerImage::of(const Vector& v) {
  IntegerImage img;
  for (const auto& x : v)
    if (sgn(x) != 0) mpz_lcm(img.scale.get_mpz_t(), img.scale.get_mpz_t(), x.get_den_mpz_t());
  img.z.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) img.z[i] = v[i].get_num() * (img.scale / v[i].get_den());
  return img;
}

// ---------------------------------------------------------------------------
// QuadraticForm

QuadraticForm::QuadraticForm(Matrix gram) : gram_(std::move(gram)) {
  if (!gram_.is_symmetric()) throw PreconditionViolated("quadratic form: gram matrix must be symmetric");
  const std::size_t n = gram_.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(gram_(i, j)) != 0) mpz_lcm(denom_.get_mpz_t(), denom_.get_mpz_t(), gram_(i, j).get_den_mpz_t());
  scaled_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(gram_(i, j)) != 0) scaled_[i * n + j] = gram_(i, j).get_num() * (denom_ / gram_(i, j).get_den());
}

Integer QuadraticForm::quadratic(const std::vector<Integer>& z) const {
  const std::size_t n = dim();
  Integer acc = 0, row;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(z[i]) == 0) continue;
    row = 0;
    const Integer* s = &scaled_[i * n];
    for (std::size_t j = i + 1; j < n; ++j)
      if (sgn(z[j]) != 0 && sgn(s[j]) != 0) row += s[j] * z[j];
    row *= 2;
    if (sgn(s[i]) != 0) row += s[i] * z[i];
    acc += row * z[i];
  }
  return acc;
}

Integer QuadraticForm::bilinear(const std::vector<Integer>& u, const std::vector<Integer>& w) const {
  const std::size_t n = dim();
  Integer acc = 0, row;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(u[i]) == 0) continue;
    row = 0;
    const Integer* s = &scaled_[i * n];
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(w[j]) != 0 && sgn(s[j]) != 0) row += s[j] * w[j];
    acc += row * u[i];
  }
  return acc;
}

Scalar QuadraticForm::operator()(const Vector& v) const {
  if (v.size() != dim()) throw DimensionMismatch("quadratic form: length mismatch");
  IntegerImage img = IntegerImage::of(v);
  Scalar q(quadratic(img.z), denom_ * img.scale * img.scale);
  q.canonicalize();
  return q;
}

Scalar QuadraticForm::polar(const Vector& u, const Vector& w) const {
  if (u.size() != dim() || w.size() != dim()) throw DimensionMismatch("polar form: length mismatch");
  IntegerImage iu = IntegerImage::of(u), iw = IntegerImage::of(w);
  Scalar q(bilinear(iu.z, iw.z), denom_ * iu.scale * iw.scale);
  q.canonicalize();
  return q;
}

Vector QuadraticForm::polar_row(const Vector& v) const { return gram_ * v; }

bool QuadraticForm::vanishes_at(const IntegerImage& v) const { return sgn(quadratic(v.z)) == 0; }

std::vector<Integer> QuadraticForm::polar_direction(const IntegerImage& v) const {
  const std::size_t n = dim();
  std::vector<Integer> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Integer* s = &scaled_[i * n];
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(v.z[j]) != 0 && sgn(s[j]) != 0) out[i] += s[j] * v.z[j];
  }
  return out;
}

// ---------------------------------------------------------------------------
// HiddenFactorization

Vector HiddenFactorization::embed(const Vector& alpha, const Vector& beta) const {
  if (alpha.size() != shape.m || beta.size() != shape.n)
    throw DimensionMismatch("embed: factor lengths do not match the shape");
  Vector flat(shape.dim());
  for (std::size_t i = 0; i < shape.m; ++i)
    for (std::size_t j = 0; j < shape.n; ++j) flat[i * shape.n + j] = alpha[i] * beta[j];
  return scramble * flat;
}

Matrix HiddenFactorization::unscramble(const Vector& v) const {
  return Matrix::reshape(scramble_inverse * v, shape.m, shape.n);
}

std::optional<std::pair<Vector, Vector>> HiddenFactorization::factor(const Vector& v) const {
  Matrix x = unscramble(v);
  if (x.is_zero()) return std::make_pair(Vector(shape.m), Vector(shape.n));
  Vector flat = x.flatten();
  std::size_t lead = flat.leading_index();
  std::size_t pi = lead / shape.n, pj = lead % shape.n;
  Vector alpha = (1 / x(pi, pj)) * x.col(pj);
  Vector beta = x.row(pi);
  for (std::size_t i = 0; i < shape.m; ++i)
    for (std::size_t j = 0; j < shape.n; ++j)
      if (x(i, j) != alpha[i] * beta[j]) return std::nullopt;
  return std::make_pair(std::move(alpha), std::move(beta));
}

// ---------------------------------------------------------------------------
// TensorSpaceInstance

namespace {

Vector nonzero_vector(Rng& rng, std::size_t len, std::int64_t range) {
  Vector v(len);
  do {
    for (std::size_t i = 0; i < len; ++i) v[i] = rng.uniform(-range, range);
  } while (v.is_zero());
  return v;
}

Matrix symmetric_outer(const Vector& x, const Vector& y) {
  const std::size_t n = x.size();
  Matrix g(n, n);
  Scalar half(1, 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Scalar t = x[i] * y[j] + y[i] * x[j];
      if (sgn(t) != 0) g(i, j) = half * t;
    }
  return g;
}

}  // namespace

void TensorSpaceInstance::build_quadrics() {
  const std::size_t m = shape_.m, n = shape_.n;
  const Matrix& r = hidden_.scramble_inverse;
  quadrics_.clear();
  quadrics_.reserve(shape_.quadric_count());
  bool first = true;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = i + 1; k < m; ++k)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = j + 1; l < n; ++l) {
          // x_ij x_kl - x_il x_kj, with x = scramble_inverse * v
          Matrix g = symmetric_outer(r.row(i * n + j), r.row(k * n + l));
          Matrix cross = symmetric_outer(r.row(i * n + l), r.row(k * n + j));
          quadrics_.emplace_back(fault_ && first ? g + cross : g - cross);
          first = false;
        }
}

TensorSpaceInstance TensorSpaceInstance::generate(FactorShape shape, std::uint64_t seed, bool pointed,
                                                  const GenerateOptions& options) {
  if (shape.m < 1 || shape.n < 1) throw PreconditionViolated("generate: factor dimensions must be >= 1");
  Rng rng(seed);
  const std::size_t dim = shape.dim();
  TensorSpaceInstance inst;
  inst.shape_ = shape;
  inst.seed_ = seed;
  inst.fault_ = options.inject_fault;
  for (;;) {
    Matrix s(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) s(i, j) = rng.uniform(-options.scramble_range, options.scramble_range);
    if (auto inv = inverse(s)) {
      inst.hidden_ = HiddenFactorization{shape, std::move(s), std::move(*inv)};
      break;
    }
  }
  inst.build_quadrics();
  if (pointed) {
    Vector alpha = nonzero_vector(rng, shape.m, kDefaultSampleRange);
    Vector beta = nonzero_vector(rng, shape.n, kDefaultSampleRange);
    inst.base_point_ = inst.hidden_.embed(alpha, beta);
  }
  return inst;
}

TensorSpaceInstance TensorSpaceInstance::from_scramble(FactorShape shape, std::uint64_t seed, Matrix scramble,
                                                       std::optional<Vector> base_point) {
  if (shape.m < 1 || shape.n < 1) throw PreconditionViolated("instance: factor dimensions must be >= 1");
  if (scramble.rows() != shape.dim() || scramble.cols() != shape.dim())
    throw PreconditionViolated("instance: scramble must be (m*n) x (m*n)");
  auto inv = inverse(scramble);
  if (!inv) throw PreconditionViolated("instance: scramble is singular");
  TensorSpaceInstance inst;
  inst.shape_ = shape;
  inst.seed_ = seed;
  inst.hidden_ = HiddenFactorization{shape, std::move(scramble), std::move(*inv)};
  inst.build_quadrics();
  if (base_point) return inst.with_base_point(std::move(*base_point));
  return inst;
}

TensorSpaceInstance TensorSpaceInstance::with_base_point(Vector v) const {
  if (v.size() != dim()) throw DimensionMismatch("base point: length mismatch");
  if (v.is_zero()) throw PreconditionViolated("base point must be nonzero");
  if (!is_simple(v)) throw PreconditionViolated("base point must be simple");
  TensorSpaceInstance copy = *this;
  copy.base_point_ = std::move(v);
  return copy;
}

bool TensorSpaceInstance::is_simple(const Vector& v) const {
  if (v.size() != dim()) throw DimensionMismatch("is_simple: length mismatch");
  stats_->membership.fetch_add(1, std::memory_order_relaxed);
  IntegerImage img = IntegerImage::of(v);
  return std::all_of(quadrics_.begin(), quadrics_.end(), [&](const QuadraticForm& q) { return q.vanishes_at(img); });
}

Vector TensorSpaceInstance::sample_simple(Rng& rng, std::int64_t range) const {
  stats_->samples.fetch_add(1, std::memory_order_relaxed);
  Vector alpha = nonzero_vector(rng, shape_.m, range);
  Vector beta = nonzero_vector(rng, shape_.n, range);
  return hidden_.embed(alpha, beta);
}

OracleCounts TensorSpaceInstance::counts() const {
  return OracleCounts{stats_->membership.load(), stats_->linearizations.load(), stats_->samples.load()};
}

void TensorSpaceInstance::note_linearization() const {
  stats_->linearizations.fetch_add(1, std::memory_order_relaxed);
}

Vector embed_simple(const TensorSpaceInstance& inst, const Vector& alpha, const Vector& beta) {
  return inst.hidden().embed(alpha, beta);
}

// ---------------------------------------------------------------------------
// Rule

bool rule_says_zero(const std::vector<Vector>& a_list, const std::vector<Vector>& b_list) {
  if (a_list.size() != b_list.size()) throw DimensionMismatch("rule: factor lists differ in length");
  if (a_list.empty()) return true;
  const std::size_t m = a_list.front().size();
  std::vector<Vector> basis;     // independent a's kept so far
  std::vector<Vector> collected;  // b's gathered against each kept a
  for (std::size_t j = 0; j < a_list.size(); ++j) {
    std::optional<Vector> coeffs;
    if (!basis.empty()) coeffs = solve_linear(Matrix::from_columns(basis, m), a_list[j]);
    if (a_list[j].is_zero()) continue;
    if (coeffs) {
      for (std::size_t i = 0; i < basis.size(); ++i)
        if (sgn((*coeffs)[i]) != 0) collected[i] += (*coeffs)[i] * b_list[j];
    } else {
      basis.push_back(a_list[j]);
      collected.push_back(b_list[j]);
    }
  }
  return std::all_of(collected.begin(), collected.end(), [](const Vector& b) { return b.is_zero(); });
}

bool verify_rule(const TensorSpaceInstance& inst, const std::vector<Vector>& a_list,
                 const std::vector<Vector>& b_list) {
  if (a_list.size() != b_list.size()) throw DimensionMismatch("rule: factor lists differ in length");
  Vector total(inst.dim());
  for (std::size_t j = 0; j < a_list.size(); ++j) total += embed_simple(inst, a_list[j], b_list[j]);
  return rule_says_zero(a_list, b_list) == total.is_zero();
}

}  // namespace segre
