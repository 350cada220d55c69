#pragma once

// Checks for the hypotheses on a sequence {(R_k, B_k)}: equivalence defect,
// the remainder bounded condition (RBC), the partial concentration condition
// (PCC), uniform contractivity and the three-series test.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "specconv/digits.hpp"
#include "specconv/exactmat.hpp"
#include "specconv/sequence.hpp"

namespace specconv {

/// Verdicts are heuristics unless certified by an analytic tail bound.
enum class Verdict { converged_numerically, diverging, inconclusive, certified };

[[nodiscard]] std::string to_string(Verdict v);

/// Exact terms of a series together with floating partial sums.
///
/// Partial sums are stored as doubles; the exact total of all terms is kept
/// separately so that sums with very large denominators stay cheap.
struct SeriesDiagnostics {
  std::string name;
  std::vector<std::size_t> indices;
  std::vector<Rational> terms;
  std::vector<double> partial_sums;
  Rational total;
  Verdict verdict = Verdict::inconclusive;
  std::string bound_used;
  std::optional<double> tail_bound;  ///< certified bound on the sum beyond the last index
};

/// Vector-valued series (three-series (ii)).
struct VectorSeriesDiagnostics {
  std::string name;
  std::vector<std::size_t> indices;
  std::vector<RatVector> terms;
  std::vector<std::vector<double>> partial_sums;
  RatVector total;
  double max_tail_increment = 0.0;  ///< max ||S_K - S_k||_2 over the last quarter
  Verdict verdict = Verdict::inconclusive;
  std::string bound_used;
};

/// Appends one term and updates the running sums.
void push_term(SeriesDiagnostics& s, std::size_t k, Rational term);

/// Ratio of block sums over (K/4, K/2] and (K/2, K] estimates the decay
/// exponent p of terms ~ k^{-p}: p > 1.2 reads as convergent, p < 1.05 as
/// divergent. An all-zero tail reads as convergent. A tail bound overrides.
void assign_verdict(SeriesDiagnostics& s, const std::optional<TailBound>& tail = std::nullopt);

/// "k,term,partial_sum" rows; exact terms, partial sums with 17 significant digits.
[[nodiscard]] std::string to_csv(const SeriesDiagnostics& s);
[[nodiscard]] std::string to_csv(const VectorSeriesDiagnostics& s);
[[nodiscard]] std::string summary_line(const SeriesDiagnostics& s);

using SetSequence = std::function<DigitSet(std::size_t)>;

struct SetPairCounts {
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  std::size_t only_a = 0;  ///< #(A \ A')
  std::size_t only_b = 0;  ///< #(A' \ A)
};

[[nodiscard]] SetPairCounts count_pair(const DigitSet& a, const DigitSet& b);
/// max{#(A'\A)/#A', #(A\A')/#A}.
[[nodiscard]] Rational defect_term(const SetPairCounts& c);

/// Terms max{#(A'_k\A_k)/#A'_k, #(A_k\A'_k)/#A_k} for k = 1..K by enumeration.
[[nodiscard]] SeriesDiagnostics equivalence_defect(const SetSequence& a, const SetSequence& b, std::size_t upto,
                                                   const std::optional<TailBound>& tail = std::nullopt);
/// Same series from closed-form counts, for sequences too large to enumerate.
[[nodiscard]] SeriesDiagnostics equivalence_defect(const std::function<SetPairCounts(std::size_t)>& counts,
                                                   std::size_t upto,
                                                   const std::optional<TailBound>& tail = std::nullopt);

struct RbcSplit {
  DigitSet b1;  ///< B cap R[-1/2, 1/2)^d
  DigitSet b2;  ///< the remainder
};

[[nodiscard]] RbcSplit rbc_split(const IntMatrix& r, const DigitSet& b);
/// Terms #B_{k,2}/#B_k.
[[nodiscard]] SeriesDiagnostics rbc_series(const TripleSequence& seq, std::size_t upto);

/// max over the vertices xi of [-1,1]^d of sqrt(d) ||R^{-T} xi||_2, squared and exact.
[[nodiscard]] Rational pcc_sup_squared(const IntMatrix& r);
/// Throws DimensionTooLarge when 2^d exceeds 2^20.
[[nodiscard]] double pcc_sup(const IntMatrix& r);

struct PccSplit {
  DigitSet b1;  ///< ||R^{-1} b||_1 < (1 - l)/2
  DigitSet b2;
};

/// Requires 0 < l < 1.
[[nodiscard]] PccSplit pcc_split(const IntMatrix& r, const DigitSet& b, const Rational& l);

struct PccDiagnostics {
  SeriesDiagnostics series;  ///< terms #B^l_{k,2}/#B_k
  double min_margin = 0.0;   ///< min over the indices of 1 - l - pcc_sup(R_k)
  std::size_t min_margin_index = 0;
  bool margin_positive = false;  ///< decided exactly
};

/// Indices default to 1..upto.
[[nodiscard]] PccDiagnostics pcc_series(const TripleSequence& seq, const Rational& l,
                                        std::vector<std::size_t> subseq, std::size_t upto);

struct ThreeSeries {
  SeriesDiagnostics outside;        ///< (i)   eta_k(R^d \ D(r))
  VectorSeriesDiagnostics mean;     ///< (ii)  E(eta_{k,r})
  SeriesDiagnostics variance;       ///< (iii) V(eta_{k,r})
};

/// eta_k = delta_{(R_k...R_1)^{-1} B_k}; eta_{k,r} moves the mass outside the
/// closed ball D(r) to the origin.
[[nodiscard]] ThreeSeries three_series(const TripleSequence& seq, const Rational& r, std::size_t upto,
                                       double cauchy_tol = 1e-10);

enum class ContractivityVerdict { verified, unverified_tail, fails };
[[nodiscard]] std::string to_string(ContractivityVerdict v);

struct ContractivityReport {
  double max_norm = 0.0;  ///< max_k of an upper bound on ||R_k^{-1}||_2
  std::size_t argmax = 0;
  std::vector<double> norms;
  std::optional<Rational> declared;
  ContractivityVerdict verdict = ContractivityVerdict::unverified_tail;
};

[[nodiscard]] ContractivityReport contractivity_report(const TripleSequence& seq, std::size_t upto,
                                                       double tol = 1e-12);

/// Finite set of points in Q^d.
using PointSet = std::vector<RatVector>;
using PointSetSequence = std::function<PointSet(std::size_t)>;

/// (R_k ... R_1)^{-1} B_k.
[[nodiscard]] PointSetSequence scaled_digit_sets(const TripleSequence& seq);
[[nodiscard]] PointSetSequence as_point_sets(const SetSequence& s);

/// Uniform double in [0, 1) from a counter-based generator.
[[nodiscard]] double counter_uniform(std::uint64_t seed, std::uint64_t draw, std::uint64_t k);

struct CouplingLevel {
  std::size_t k = 0;
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  std::size_t shared = 0;
  Rational exact_probability;  ///< P(X_k != Y_k)
  std::uint64_t mismatches = 0;
  double frequency = 0.0;
};

struct CouplingReport {
  std::size_t dim = 0;
  std::size_t draws = 0;
  std::uint64_t seed = 0;
  std::vector<CouplingLevel> levels;
  Rational exact_sum;
  double empirical_sum = 0.0;
  /// Per draw, sum_{k <= K} X_k and sum_{k <= K} Y_k (row-major, dim entries per draw).
  std::vector<double> sums_x;
  std::vector<double> sums_y;
};

/// Couples X_k ~ delta_{A_k} and Y_k ~ delta_{A'_k} on one uniform variable:
/// with shared elements listed first and m = #A <= n = #A', X takes a_i on
/// [(i-1)/m, i/m) and Y takes a'_i on [(i-1)/m, (i-1)/m + 1/n); the leftover
/// gaps carry a'_{m+1}, ..., a'_n. Roles are swapped when #A > #A'.
[[nodiscard]] CouplingReport coupled_sample(const PointSetSequence& a, const PointSetSequence& b, std::size_t upto,
                                            std::size_t draws, std::uint64_t seed, bool keep_sums = true);

}  // namespace specconv
