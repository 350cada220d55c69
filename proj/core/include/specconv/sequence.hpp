#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "specconv/digits.hpp"
#include "specconv/exactmat.hpp"

namespace specconv {

/// One term (R_k, B_k, L_k) of a sequence; L_k is optional.
struct Level {
  IntMatrix r;
  DigitSet b;
  std::optional<DigitSet> l;
};

/// Analytic upper bound for the tail sum_{k > K} term_k of a series.
struct TailBound {
  std::string description;
  std::function<double(std::size_t)> tail;
};

/// Closed-form tail bounds a generator may publish for its condition series.
struct SeriesTailBounds {
  std::optional<TailBound> rbc;
  std::optional<TailBound> pcc;
  /// The pcc bound holds for 0 < l <= pcc_max_l.
  Rational pcc_max_l;
  /// Tail of the equivalence defect between B_k and its mod-R_k reduction.
  std::optional<TailBound> reduction_defect;
};

/// Finite or generator-backed sequence {(R_k, B_k, L_k)}_{k >= 1} in Z^d.
///
/// Levels are produced on demand and validated on every access: R_k must be
/// d x d and invertible, B_k must have at least two elements (unless the
/// sequence is explicitly marked degenerate), and L_k, when present, must
/// live in Z^d.
class TripleSequence {
 public:
  struct Source {
    std::size_t dim = 0;
    std::function<IntMatrix(std::size_t)> matrix;
    std::function<DigitSet(std::size_t)> digits;
    std::function<std::optional<DigitSet>(std::size_t)> spectrum;
    std::optional<std::size_t> length;  ///< nullopt: unbounded
    std::string name;
  };

  TripleSequence() = default;
  explicit TripleSequence(Source src);
  static TripleSequence from_levels(std::vector<Level> levels, std::string name = "inline");

  [[nodiscard]] std::size_t dim() const noexcept { return src_.dim; }
  [[nodiscard]] const std::string& name() const noexcept { return src_.name; }
  [[nodiscard]] std::optional<std::size_t> length() const noexcept { return src_.length; }
  [[nodiscard]] bool has_level(std::size_t k) const noexcept { return k >= 1 && (!src_.length || k <= *src_.length); }

  /// Throws IndexOutOfRange or InvalidLevel.
  [[nodiscard]] Level level(std::size_t k) const;
  [[nodiscard]] IntMatrix matrix(std::size_t k) const;
  [[nodiscard]] DigitSet digits(std::size_t k) const;
  [[nodiscard]] std::optional<DigitSet> spectrum(std::size_t k) const;

  /// R_q R_{q-1} ... R_{p+1} for 0 <= p < q.
  [[nodiscard]] IntMatrix product_range(std::size_t p, std::size_t q) const;

  [[nodiscard]] const std::optional<Rational>& declared_contractivity() const noexcept { return contractivity_; }
  TripleSequence& set_declared_contractivity(std::optional<Rational> c);

  [[nodiscard]] const SeriesTailBounds& tail_bounds() const noexcept { return tails_; }
  TripleSequence& set_tail_bounds(SeriesTailBounds t);

  /// Allow singleton digit sets (used for degenerate fixtures only).
  TripleSequence& allow_degenerate(bool allow = true);
  [[nodiscard]] bool degenerate_allowed() const noexcept { return allow_degenerate_; }

 private:
  void check_index(std::size_t k) const;

  Source src_;
  std::optional<Rational> contractivity_;
  SeriesTailBounds tails_;
  bool allow_degenerate_ = false;
};

}  // namespace specconv
