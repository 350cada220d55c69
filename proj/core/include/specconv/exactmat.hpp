#pragma once

// Exact small-dimensional linear algebra over the integers and rationals.
//
// Everything here is a value type. Matrices are square (d x d) and stored
// row-major; vectors carry their dimension. Floating point only appears in
// the norm and eigenvalue-modulus brackets, whose endpoints are certified by
// exact rational tests.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "specconv/bigint.hpp"
#include "specconv/errors.hpp"

namespace specconv {

template <class T>
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim) : c_(dim) {}
  Vector(std::initializer_list<T> init) : c_(init) {}
  explicit Vector(std::vector<T> coords) : c_(std::move(coords)) {}
  explicit Vector(std::span<const T> coords) : c_(coords.begin(), coords.end()) {}

  [[nodiscard]] std::size_t dim() const noexcept { return c_.size(); }
  T& operator[](std::size_t i) { return c_[i]; }
  const T& operator[](std::size_t i) const { return c_[i]; }
  [[nodiscard]] auto begin() const { return c_.begin(); }
  [[nodiscard]] auto end() const { return c_.end(); }
  [[nodiscard]] std::span<const T> view() const noexcept { return c_; }
  operator std::span<const T>() const noexcept { return c_; }  // NOLINT

  [[nodiscard]] bool is_zero() const {
    for (const auto& x : c_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  Vector& operator+=(const Vector& o) {
    check_dim(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    check_dim(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  Vector operator-() const {
    Vector r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend bool operator==(const Vector& a, const Vector& b) = default;
  friend std::strong_ordering operator<=>(const Vector& a, const Vector& b) {
    if (auto c = a.c_.size() <=> b.c_.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (auto c = a.c_[i] <=> b.c_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

 private:
  void check_dim(const Vector& o) const {
    if (o.c_.size() != c_.size()) throw DimensionMismatch("vector dimensions differ");
  }
  std::vector<T> c_;
};

using IntVector = Vector<BigInt>;
using RatVector = Vector<Rational>;
using IntView = std::span<const BigInt>;

template <class T>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), e_(dim * dim) {}

  static Matrix identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix diagonal(const std::vector<T>& diag) {
    Matrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }
  static Matrix scalar(std::size_t dim, const T& s) { return diagonal(std::vector<T>(dim, s)); }
  /// Throws DimensionMismatch unless rows form a square matrix.
  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw DimensionMismatch("matrix rows must form a square matrix");
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  T& operator()(std::size_t i, std::size_t j) { return e_[i * dim_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return e_[i * dim_ + j]; }

  [[nodiscard]] Matrix transpose() const {
    Matrix t(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  [[nodiscard]] bool is_upper_triangular() const {
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (!(*this)(i, j).is_zero()) return false;
      }
    }
    return true;
  }
  [[nodiscard]] bool is_lower_triangular() const { return transpose().is_upper_triangular(); }
  [[nodiscard]] bool is_diagonal() const { return is_upper_triangular() && is_lower_triangular(); }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.dim_ != b.dim_) throw DimensionMismatch("matrix dimensions differ");
    Matrix r(a.dim_);
    for (std::size_t i = 0; i < a.dim_; ++i) {
      for (std::size_t k = 0; k < a.dim_; ++k) {
        const T& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < a.dim_; ++j) r(i, j) += aik * b(k, j);
      }
    }
    return r;
  }

  [[nodiscard]] Vector<T> apply(std::span<const T> v) const {
    if (v.size() != dim_) throw DimensionMismatch("matrix/vector dimensions differ");
    Vector<T> r(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      T acc(0);
      for (std::size_t j = 0; j < dim_; ++j) {
        if (!v[j].is_zero()) acc += (*this)(i, j) * v[j];
      }
      r[i] = std::move(acc);
    }
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<T> e_;
};

using IntMatrix = Matrix<BigInt>;
using RatMatrix = Matrix<Rational>;

[[nodiscard]] RatVector to_rational(IntView v);
[[nodiscard]] RatMatrix to_rational(const IntMatrix& m);
/// Rational matrix applied to an integer vector.
[[nodiscard]] RatVector apply(const RatMatrix& m, IntView v);
[[nodiscard]] Rational dot(const RatVector& a, const RatVector& b);
[[nodiscard]] Rational dot(const RatVector& a, IntView b);
[[nodiscard]] Rational squared_norm(const RatVector& v);

/// Fraction-free (Bareiss) determinant.
[[nodiscard]] BigInt determinant(const IntMatrix& m);

/// Exact inverse. Throws SingularMatrix when det(m) = 0.
[[nodiscard]] RatMatrix invert(const IntMatrix& m);
[[nodiscard]] RatMatrix invert(const RatMatrix& m);

/// Integer adjugate: m * adjugate(m) = det(m) * I.
[[nodiscard]] IntMatrix adjugate(const IntMatrix& m);

/// R_q R_{q-1} ... R_{p+1}, where factors[0] holds R_1.
/// Requires p < q <= factors.size(); throws IndexOutOfRange otherwise.
[[nodiscard]] IntMatrix product_range(std::span<const IntMatrix> factors, std::size_t p, std::size_t q);

struct NormBracket {
  Rational lower_sq;  ///< certified lower bound of ||m||_2^2
  Rational upper_sq;  ///< certified upper bound of ||m||_2^2
  double lower = 0.0;
  double upper = 0.0;
  int iterations = 0;
};

/// Brackets the spectral norm by bisection on t, deciding exactly whether
/// t*I - m^T m is positive definite. The initial bracket is
/// [max column norm^2, min(Frobenius^2, Gershgorin bound)].
[[nodiscard]] NormBracket spectral_norm_bracket(const RatMatrix& m, double tol = 1e-12);

/// u with ||m||_2 <= u <= ||m||_2 + tol.
[[nodiscard]] double spectral_norm_upper(const RatMatrix& m, double tol = 1e-12);

/// Coefficients c_0..c_d (low to high) of det(x I - m); monic.
[[nodiscard]] std::vector<Rational> characteristic_polynomial(const RatMatrix& m);

/// Schur-Cohn test: true iff every root of sum c_k z^k lies in |z| < 1.
/// The leading coefficient must be non-zero.
[[nodiscard]] bool roots_in_open_unit_disk(std::vector<Rational> coeffs);

struct ModulusInterval {
  double lower = 0.0;
  double upper = 0.0;
};

enum class ExpansiveStatus { expansive, not_expansive };

struct ExpansiveCertificate {
  ExpansiveStatus status = ExpansiveStatus::not_expansive;
  std::string method;  ///< "triangular" or "schur-cohn"
  std::vector<Rational> characteristic_polynomial;
  ModulusInterval min_modulus;  ///< bracket of min |eigenvalue|
  ModulusInterval max_modulus;  ///< bracket of max |eigenvalue|
  [[nodiscard]] bool expansive() const noexcept { return status == ExpansiveStatus::expansive; }
};

/// Decides whether every eigenvalue of m has modulus > 1. Exact for
/// triangular matrices and for d <= 4 (Schur-Cohn on the reversed
/// characteristic polynomial). Throws DimensionUnsupported otherwise.
[[nodiscard]] ExpansiveCertificate expansive_check(const IntMatrix& m, double tol = 1e-12);

[[nodiscard]] std::string to_string(IntView v);
[[nodiscard]] std::string to_string(const RatVector& v);
[[nodiscard]] std::string to_string(const IntMatrix& m);

}  // namespace specconv
