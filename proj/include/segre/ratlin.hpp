#pragma once

// Exact rational linear algebra. Every value here is immutable once built and
// every operation is a pure function, so all results are reproducible bit for
// bit and equality tests never need a tolerance.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace segre {

using Scalar = mpq_class;
using Integer = mpz_class;

/// "p/q", with "/q" omitted when q == 1.
std::string to_string(const Scalar& s);
/// Inverse of to_string; also accepts plain integers. Throws ParseError.
Scalar parse_scalar(std::string_view text);

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n) : v_(n) {}
  Vector(std::initializer_list<Scalar> xs) : v_(xs) {}
  explicit Vector(std::vector<Scalar> xs) : v_(std::move(xs)) {}

  static Vector unit(std::size_t n, std::size_t i);

  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  const Scalar& operator[](std::size_t i) const { return v_[i]; }
  Scalar& operator[](std::size_t i) { return v_[i]; }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }
  const std::vector<Scalar>& entries() const { return v_; }

  bool is_zero() const;
  /// Index of the first nonzero entry, or size() for the zero vector.
  std::size_t leading_index() const;
  /// Scaled copy whose first nonzero entry is 1 (zero stays zero).
  Vector normalized() const;

  Vector& operator+=(const Vector& o);
  Vector& operator-=(const Vector& o);
  Vector& operator*=(const Scalar& s);

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator-(Vector a) { return a *= Scalar(-1); }
  friend Vector operator*(const Scalar& s, Vector a) { return a *= s; }
  friend Vector operator*(Vector a, const Scalar& s) { return a *= s; }

  friend bool operator==(const Vector& a, const Vector& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Vector& a, const Vector& b) { return !(a == b); }
  /// Lexicographic; used for canonical orderings and cache keys.
  friend bool operator<(const Vector& a, const Vector& b);

 private:
  std::vector<Scalar> v_;
};

Scalar dot(const Vector& a, const Vector& b);

/// If b == s*a for some scalar s, returns s. a must be nonzero.
std::optional<Scalar> proportionality(const Vector& a, const Vector& b);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows);
  /// Row-major reshape of a length rows*cols vector.
  static Matrix reshape(const Vector& v, std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

  Vector row(std::size_t i) const;
  Vector col(std::size_t j) const;
  std::vector<Vector> row_vectors() const;
  /// Row-major flattening.
  Vector flatten() const;
  Matrix transpose() const;
  bool is_zero() const;
  bool is_symmetric() const;

  Matrix& operator*=(const Scalar& s);
  friend Matrix operator*(const Scalar& s, Matrix m) { return m *= s; }
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& v);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> a_;
};

/// Stacks a on top of b; column counts must agree.
Matrix vstack(const Matrix& a, const Matrix& b);
/// Kronecker product; kron(g,h) * flatten(x y^T) == flatten((g x)(h y)^T).
Matrix kron(const Matrix& a, const Matrix& b);

struct Echelon {
  Matrix reduced;                    // same shape as the input, zero rows last
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

Echelon echelon(const Matrix& m);
Matrix rref(const Matrix& m);
std::size_t rank(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);
/// Any x with a*x == rhs, or nullopt when rhs is outside the column space.
std::optional<Vector> solve_linear(const Matrix& a, const Vector& rhs);

std::optional<Integer> integer_sqrt_exact(const Integer& n);
/// Exact square root of a nonnegative rational whose numerator and
/// denominator are both perfect squares.
std::optional<Scalar> rational_sqrt_exact(const Scalar& q);

/// A linear subspace stored by its reduced row-echelon basis, so two
/// subspaces are equal iff their stored bases are identical.
class Subspace {
 public:
  Subspace() : Subspace(0) {}
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

  static Subspace span(std::size_t ambient_dim, const std::vector<Vector>& vectors);
  static Subspace row_space(const Matrix& m);
  static Subspace full(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  std::vector<Vector> basis_vectors() const { return basis_.row_vectors(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v against basis(), or nullopt if v is not in the span.
  std::optional<Vector> coordinates(const Vector& v) const;
  Vector combine(const Vector& coords) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }
  /// Lexicographic on basis rows, shorter first when one is a prefix.
  friend bool operator<(const Subspace& a, const Subspace& b);

 private:
  std::size_t ambient_;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace kernel(const Matrix& m);
Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);

}  // namespace segre
