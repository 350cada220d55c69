#pragma once

// Finite discrete probability measures with rational atoms and weights.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "specconv/digits.hpp"
#include "specconv/exactmat.hpp"
#include "specconv/phase.hpp"
#include "specconv/sequence.hpp"

namespace specconv {

inline constexpr std::size_t kDefaultMaxAtoms = 1'000'000;

class DiscreteMeasure {
 public:
  struct Atom {
    RatVector point;
    Rational weight;
    friend bool operator==(const Atom&, const Atom&) = default;
  };

  DiscreteMeasure() = default;
  static DiscreteMeasure point_mass(RatVector x);
  /// Merges equal points and checks positive weights summing to exactly 1.
  static DiscreteMeasure from_atoms(std::size_t dim, std::vector<Atom> atoms);

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t size() const noexcept { return atoms_.size(); }
  /// Sorted lexicographically by point.
  [[nodiscard]] const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  [[nodiscard]] Rational total_mass() const;
  [[nodiscard]] bool uniform_weights() const;

  friend bool operator==(const DiscreteMeasure&, const DiscreteMeasure&) = default;

 private:
  static DiscreteMeasure merged(std::size_t dim, std::vector<Atom> atoms);

  std::size_t dim_ = 0;
  std::vector<Atom> atoms_;

  friend DiscreteMeasure convolve(const DiscreteMeasure&, const DiscreteMeasure&, std::size_t);
  friend DiscreteMeasure uniform_on(const DigitSet&, const RatMatrix&);
};

/// delta_{map A}: uniform weights on the images, merged on exact equality.
[[nodiscard]] DiscreteMeasure uniform_on(const DigitSet& a, const RatMatrix& map);
[[nodiscard]] DiscreteMeasure convolve(const DiscreteMeasure& m1, const DiscreteMeasure& m2,
                                       std::size_t max_atoms = kDefaultMaxAtoms);

/// mu_k = delta_{R_1^{-1}B_1} * delta_{(R_2R_1)^{-1}B_2} * ... * delta_{(R_k...R_1)^{-1}B_k}.
/// Throws TruncationTooLarge when prod #B_j exceeds max_atoms.
[[nodiscard]] DiscreteMeasure mu_truncate(const TripleSequence& seq, std::size_t k,
                                          std::size_t max_atoms = kDefaultMaxAtoms);

struct TailTruncation {
  std::size_t start = 0;
  std::size_t depth = 0;
  DiscreteMeasure measure;
};

/// delta_{R_{k+1}^{-1}B_{k+1}} * ... * delta_{(R_{k+m}...R_{k+1})^{-1}B_{k+m}}.
[[nodiscard]] TailTruncation nu_tail_truncate(const TripleSequence& seq, std::size_t k, std::size_t depth,
                                              std::size_t max_atoms = kDefaultMaxAtoms);

/// sum_j w_j e^{-2 pi i xi . x_j}; phases reduced mod 1 exactly. Exactly 1 at xi = 0.
[[nodiscard]] std::complex<double> fourier(const DiscreteMeasure& m, const RatVector& xi);

/// M_B(xi) = (1/#B) sum_b e^{-2 pi i b . xi}.
[[nodiscard]] std::complex<double> mask(const DigitSet& b, const RatVector& xi);
[[nodiscard]] std::complex<double> mask(const DigitSet& b, const PhasePoint& xi);

/// prod_{j<m} M_{B_{k+1+j}}((R_{k+1+j}...R_{k+1})^{-T} xi).
[[nodiscard]] std::complex<double> tail_fourier_product(const TripleSequence& seq, std::size_t k,
                                                        std::size_t depth, const RatVector& xi);

/// Fourier transform of a fixed measure at xi + lambda for many integer shifts lambda.
///
/// For an atom x, (xi + lambda) . x = xi . x + lambda . x, so the phases xi . x_j
/// are reduced once per xi and each shift costs one PhasePoint dot product per atom.
class ShiftedFourier {
 public:
  ShiftedFourier(const DiscreteMeasure& m, const RatVector& xi);
  [[nodiscard]] std::complex<double> at(IntView lambda) const;
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

 private:
  std::size_t dim_;
  std::vector<PhasePoint> atoms_;
  std::vector<double> base_;
  std::vector<double> weights_;
};

/// "x1,...,xd,weight" header, then one row per atom with exact rational strings.
[[nodiscard]] std::string to_csv(const DiscreteMeasure& m);

}  // namespace specconv
