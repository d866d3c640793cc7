#include "segre/ratlin.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "segre/error.hpp"

namespace segre {

std::string to_string(const Scalar& s) { return s.get_str(); }

Scalar parse_scalar(std::string_view text) {
  auto digits = [](std::string_view t) {
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits(num) || !digits(den)) throw ParseError("malformed rational: '" + std::string(text) + "'");
  Integer d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  Integer n(std::string(num), 10);
  if (text.front() == '-') n = -n;
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------
// Vector

Vector Vector::unit(std::size_t n, std::size_t i) {
  Vector e(n);
  e[i] = 1;
  return e;
}

bool Vector::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

std::size_t Vector::leading_index() const {
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (sgn(v_[i]) != 0) return i;
  return v_.size();
}

Vector Vector::normalized() const {
  auto i = leading_index();
  if (i == size()) return *this;
  Scalar inv = 1 / v_[i];
  return inv * *this;
}

Vector& Vector::operator+=(const Vector& o) {
  if (o.size() != size()) throw DimensionMismatch("vector add: length mismatch");
  for (std::size_t i = 0; i < size(); ++i) v_[i] += o.v_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& o) {
  if (o.size() != size()) throw DimensionMismatch("vector sub: length mismatch");
  for (std::size_t i = 0; i < size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

Vector& Vector::operator*=(const Scalar& s) {
  for (auto& x : v_) x *= s;
  return *this;
}

bool operator<(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Scalar dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
  Scalar s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

std::optional<Scalar> proportionality(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("proportionality: length mismatch");
  auto i = a.leading_index();
  if (i == a.size()) throw ZeroVector("proportionality: reference vector is zero");
  Scalar s = b[i] / a[i];
  for (std::size_t j = 0; j < a.size(); ++j)
    if (b[j] != s * a[j]) return std::nullopt;
  return s;
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  a_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("from_rows: row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw DimensionMismatch("from_columns: column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Matrix Matrix::reshape(const Vector& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) throw DimensionMismatch("reshape: size mismatch");
  Matrix m(rows, cols);
  std::copy(v.begin(), v.end(), m.a_.begin());
  return m;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(std::vector<Scalar>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_));
}

Vector Matrix::col(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<Vector> Matrix::row_vectors() const {
  std::vector<Vector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

Vector Matrix::flatten() const { return Vector(a_); }

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

bool Matrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Matrix& Matrix::operator*=(const Scalar& s) {
  for (auto& x : a_) x *= s;
  return *this;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix add: shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sub: shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
  return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product: inner dimension mismatch");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (sgn(b(k, j)) != 0) c(i, j) += x * b(k, j);
    }
  return c;
}

Vector operator*(const Matrix& a, const Vector& v) {
  if (a.cols_ != v.size()) throw DimensionMismatch("matrix-vector product: length mismatch");
  Vector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j)
      if (sgn(v[j]) != 0 && sgn(a(i, j)) != 0) out[i] += a(i, j) * v[j];
  return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack: column mismatch");
  Matrix c(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, j) = b(i, j);
  return c;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    }
  return k;
}

// ---------------------------------------------------------------------------
// Elimination. Rows are cleared to primitive integer vectors and reduced
// Gauss-Jordan style with content removal after every update, which keeps
// coefficient growth in check; division into rationals happens once at the end.

namespace {

using IntRow = std::vector<Integer>;

void make_primitive(IntRow& r) {
  Integer g = 0;
  for (const auto& x : r) {
    if (sgn(x) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g == 0 || g == 1) return;
  for (auto& x : r)
    if (sgn(x) != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

IntRow integer_row(const Matrix& m, std::size_t i) {
  Integer l = 1;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (sgn(m(i, j)) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
  IntRow r(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (sgn(m(i, j)) != 0) r[j] = m(i, j).get_num() * (l / m(i, j).get_den());
  make_primitive(r);
  return r;
}

}  // namespace

Echelon echelon(const Matrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<IntRow> a;
  a.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) a.push_back(integer_row(m, i));

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  Integer g, pf, ff;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (sgn(a[i][c]) == 0) continue;
      if (best == rows || mpz_cmpabs(a[i][c].get_mpz_t(), a[best][c].get_mpz_t()) < 0) best = i;
    }
    if (best == rows) continue;
    std::swap(a[r], a[best]);
    const IntRow& p = a[r];
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      mpz_gcd(g.get_mpz_t(), p[c].get_mpz_t(), a[i][c].get_mpz_t());
      pf = p[c] / g;
      ff = a[i][c] / g;
      IntRow& row = a[i];
      for (std::size_t j = 0; j < cols; ++j) {
        if (pf != 1 && sgn(row[j]) != 0) row[j] *= pf;
        if (sgn(p[j]) != 0) row[j] -= ff * p[j];
      }
      make_primitive(row);
    }
    pivots.push_back(c);
    ++r;
  }

  Echelon out{Matrix(rows, cols), pivots};
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const Integer& lead = a[i][pivots[i]];
    for (std::size_t j = 0; j < cols; ++j) {
      if (sgn(a[i][j]) == 0) continue;
      Scalar q(a[i][j], lead);
      q.canonicalize();
      out.reduced(i, j) = q;
    }
  }
  return out;
}

Matrix rref(const Matrix& m) { return echelon(m).reduced; }

std::size_t rank(const Matrix& m) { return echelon(m).pivots.size(); }

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse: matrix is not square");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  Echelon e = echelon(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

std::optional<Vector> solve_linear(const Matrix& a, const Vector& rhs) {
  if (rhs.size() != a.rows()) throw DimensionMismatch("solve_linear: rhs length mismatch");
  const std::size_t n = a.cols();
  Matrix aug(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = rhs[i];
  }
  Echelon e = echelon(aug);
  if (!e.pivots.empty() && e.pivots.back() == n) return std::nullopt;
  Vector x(n);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, n);
  return x;
}

std::optional<Integer> integer_sqrt_exact(const Integer& n) {
  if (sgn(n) < 0 || mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
  return Integer(sqrt(n));
}

std::optional<Scalar> rational_sqrt_exact(const Scalar& q) {
  auto num = integer_sqrt_exact(q.get_num());
  auto den = integer_sqrt_exact(q.get_den());
  if (!num || !den) return std::nullopt;
  Scalar r(*num, *den);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::row_space(const Matrix& m) {
  Echelon e = echelon(m);
  Subspace s(m.cols());
  s.basis_ = Matrix(e.pivots.size(), m.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s.basis_(i, j) = e.reduced(i, j);
  s.pivots_ = std::move(e.pivots);
  return s;
}

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<Vector>& vectors) {
  return row_space(Matrix::from_rows(vectors, ambient_dim));
}

Subspace Subspace::full(std::size_t ambient_dim) { return row_space(Matrix::identity(ambient_dim)); }

std::optional<Vector> Subspace::coordinates(const Vector& v) const {
  if (v.size() != ambient_) throw DimensionMismatch("subspace coordinates: length mismatch");
  Vector c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
  if (combine(c) != v) return std::nullopt;
  return c;
}

Vector Subspace::combine(const Vector& coords) const {
  if (coords.size() != dim()) throw DimensionMismatch("subspace combine: coordinate count mismatch");
  Vector v(ambient_);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (sgn(coords[i]) == 0) continue;
    for (std::size_t j = 0; j < ambient_; ++j)
      if (sgn(basis_(i, j)) != 0) v[j] += coords[i] * basis_(i, j);
  }
  return v;
}

bool Subspace::contains(const Vector& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw DimensionMismatch("subspace containment: ambient mismatch");
  if (other.dim() > dim()) return false;
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

bool operator<(const Subspace& a, const Subspace& b) {
  if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
  const std::size_t k = std::min(a.dim(), b.dim());
  for (std::size_t i = 0; i < k; ++i) {
    Vector ra = a.basis_.row(i), rb = b.basis_.row(i);
    if (ra < rb) return true;
    if (rb < ra) return false;
  }
  return a.dim() < b.dim();
}

Subspace kernel(const Matrix& m) {
  Echelon e = echelon(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector x(n);
    x[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = -e.reduced(i, f);
    basis.push_back(std::move(x));
  }
  return Subspace::span(n, basis);
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("subspace sum: ambient mismatch");
  return Subspace::row_space(vstack(a.basis(), b.basis()));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("subspace intersection: ambient mismatch");
  // a ∩ b is the common kernel of both annihilators.
  const std::size_t n = a.ambient_dim();
  if (a.dim() == 0 || b.dim() == 0) return Subspace(n);
  Matrix ann_a = kernel(a.basis()).basis();
  Matrix ann_b = kernel(b.basis()).basis();
  return kernel(vstack(ann_a, ann_b));
}

}  // namespace segre
