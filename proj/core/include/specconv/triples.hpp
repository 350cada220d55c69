#pragma once

// Hadamard triples (R, B, L): unitarity checks, reduction modulo R Z^d and composition.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "specconv/digits.hpp"
#include "specconv/exactmat.hpp"
#include "specconv/sequence.hpp"

namespace specconv {

inline constexpr double kDefaultUnitaryTol = 1e-9;

/// Exact arithmetic for c = R^{-1} b written as adj(R) b / det(R).
///
/// Membership in the half-open cube R[-1/2, 1/2)^d and the rounding used by
/// mod_reduce only need the integer vector adj(R) b and det(R). When the
/// adjugate and the digit fit in 60 bits both are evaluated in __int128.
class FundamentalDomain {
 public:
  explicit FundamentalDomain(const IntMatrix& r);

  [[nodiscard]] std::size_t dim() const noexcept { return r_.dim(); }
  [[nodiscard]] const IntMatrix& matrix() const noexcept { return r_; }
  [[nodiscard]] const IntMatrix& adjugate() const noexcept { return adj_; }
  [[nodiscard]] const BigInt& determinant() const noexcept { return det_; }

  /// R^{-1} b in [-1/2, 1/2)^d.
  [[nodiscard]] bool contains(IntView b) const;
  /// n with n_i = floor((R^{-1}b)_i + 1/2), so that b - R n lies in R[-1/2,1/2)^d.
  [[nodiscard]] IntVector rounding(IntView b) const;
  /// b - R n with n = rounding(b).
  [[nodiscard]] IntVector reduce(IntView b) const;
  /// sign(det) adj(R) b, i.e. |det| R^{-1} b.
  [[nodiscard]] IntVector scaled_preimage(IntView b) const;
  /// |det| ||R^{-1}b||_1.
  [[nodiscard]] BigInt scaled_l1(IntView b) const;

 private:
  [[nodiscard]] bool fast_for(IntView b) const;
  [[nodiscard]] __int128 fast_component(std::size_t i, IntView b) const;

  IntMatrix r_;
  IntMatrix adj_;
  BigInt det_;
  BigInt abs_det_;
  bool fast_ = false;
  std::vector<std::int64_t> adj64_;  // sign(det) * adj, row-major
  std::int64_t abs_det64_ = 0;
};

struct HadamardReport {
  bool square = false;
  bool unitary = false;
  double max_deviation = 0.0;  ///< max |(H*H - I)_{ij}|
  std::size_t rows = 0;        ///< #B
  std::size_t cols = 0;        ///< #L
};

/// Builds H = [(1/sqrt #B) e^{-2 pi i (R^{-1}b) . l}] with exact phases and
/// compares H*H with the identity. A size mismatch is reported as non-square.
[[nodiscard]] HadamardReport hadamard_check(const IntMatrix& r, const DigitSet& b, const DigitSet& l,
                                            double tol = kDefaultUnitaryTol);

/// Canonical representatives b - R round(R^{-1}b) in R[-1/2,1/2)^d.
/// Throws CongruentDigits when two digits share a class modulo R Z^d.
[[nodiscard]] DigitSet mod_reduce(const DigitSet& b, const IntMatrix& r);

class HadamardTriple {
 public:
  /// Runs hadamard_check once; throws TripleInvalid unless it passes.
  HadamardTriple(IntMatrix r, DigitSet b, DigitSet l, double tol = kDefaultUnitaryTol);

  [[nodiscard]] std::size_t dim() const noexcept { return r_.dim(); }
  [[nodiscard]] const IntMatrix& r() const noexcept { return r_; }
  [[nodiscard]] const DigitSet& b() const noexcept { return b_; }
  [[nodiscard]] const DigitSet& l() const noexcept { return l_; }
  [[nodiscard]] double deviation() const noexcept { return deviation_; }
  [[nodiscard]] double tolerance() const noexcept { return tol_; }

 private:
  IntMatrix r_;
  DigitSet b_;
  DigitSet l_;
  double deviation_ = 0.0;
  double tol_ = kDefaultUnitaryTol;
};

/// The unverified product triple: R = R_n...R_1, B = R_n...R_2 B_1 + ... + B_n,
/// L = L_1 + R_1^T L_2 + ... + (R_{n-1}...R_1)^T L_n.
struct ComposedComponents {
  IntMatrix r;
  DigitSet b;
  DigitSet l;
};

/// Throws TripleInvalid if a level lacks L or the sums collide, and
/// TruncationTooLarge when prod #B_j exceeds max_elements.
[[nodiscard]] ComposedComponents compose_components(std::span<const Level> levels,
                                                    std::size_t max_elements = 1'000'000);
[[nodiscard]] ComposedComponents compose_components(const TripleSequence& seq, std::size_t from, std::size_t to,
                                                    std::size_t max_elements = 1'000'000);

/// Composition of verified triples; the result is checked again.
[[nodiscard]] HadamardTriple compose_triples(std::span<const HadamardTriple> ts);

/// (R, B, L + l0).
[[nodiscard]] HadamardTriple shift_spectrum(const HadamardTriple& t, IntView l0);

}  // namespace specconv
