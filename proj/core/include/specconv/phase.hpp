#pragma once

// Phase reduction for exponentials e^{-2 pi i n . c} with n integer and c rational.
//
// A PhasePoint holds c reduced modulo Z^d. Each coordinate is kept both as the
// exact rational in [0, 1) and as an unevaluated double pair hi + lo, which is
// accurate to ~1e-32. For integer vectors with |n_i| < 2^31 the phase n . c
// mod 1 is then evaluated in double arithmetic with an absolute error of a few
// ulps of 1, independent of the size of c's denominators: the products n_i*hi
// are split exactly with fma and their integer parts discarded before summing.
// Larger integers fall back to exact rational arithmetic.

#include <complex>
#include <optional>
#include <vector>

#include "specconv/exactmat.hpp"

namespace specconv {

/// e^{-2 pi i t}.
[[nodiscard]] std::complex<double> unit_phase(double turns);

/// Exact x mod 1 converted to double in [0, 1).
[[nodiscard]] double frac_to_double(const Rational& x);

class PhasePoint {
 public:
  PhasePoint() = default;
  explicit PhasePoint(const RatVector& c);
  /// Sum modulo Z^d. The result keeps the exact part only when both operands have it.
  friend PhasePoint operator+(const PhasePoint& a, const PhasePoint& b);

  [[nodiscard]] std::size_t dim() const noexcept { return hi_.size(); }
  [[nodiscard]] bool has_exact() const noexcept { return exact_.has_value(); }
  [[nodiscard]] const RatVector& exact() const { return *exact_; }

  /// (n . c) mod 1, in [0, 1).
  [[nodiscard]] double dot_mod1(IntView n) const;
  /// Fast path only; requires |n_i| < 2^31 (not checked).
  [[nodiscard]] double dot_mod1_small(IntView n) const;
  /// Fast path for digits held as plain integers.
  [[nodiscard]] double dot_mod1_small(const std::int64_t* n) const;

 private:
  std::vector<double> hi_;
  std::vector<double> lo_;
  std::optional<RatVector> exact_;
};

/// Exact (n . c) mod 1 for arbitrary integers.
[[nodiscard]] double exact_dot_mod1(const RatVector& c, IntView n);

}  // namespace specconv
