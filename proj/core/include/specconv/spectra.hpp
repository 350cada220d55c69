#pragma once

// Candidate spectra built level by level, the Q-function, exact finite-level
// spectrality checks and the equi-positivity scan.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specconv/digits.hpp"
#include "specconv/exactmat.hpp"
#include "specconv/measures.hpp"
#include "specconv/phase.hpp"
#include "specconv/sequence.hpp"
#include "specconv/triples.hpp"

namespace specconv {

/// Key (lambda, j) of a k-choice.
using KChoiceKey = std::pair<IntVector, std::size_t>;

/// How k_{lambda, j} is chosen when a level is appended.
struct KChooser {
  enum class Kind { zero, windowed, table };
  Kind kind = Kind::zero;
  int radius = 2;          ///< windowed: k ranges over {-radius..radius}^d
  std::size_t depth = 8;   ///< windowed: number of tail levels in the truncated tail transform
  std::map<KChoiceKey, IntVector> table;  ///< table: missing entries mean k = 0

  static KChooser zero() { return {}; }
  static KChooser windowed(int radius = 2, std::size_t depth = 8);
  static KChooser from_table(std::map<KChoiceKey, IntVector> table);
};

struct SpectrumOptions {
  /// When set, every milestone after the first is advanced to the first m with
  /// |(R_m...R_1)^{-T} lambda| < delta0/2 for all lambda in the previous level.
  std::optional<Rational> delta0;
  std::size_t milestone_search = 256;  ///< how far past a requested milestone to look
  std::size_t max_elements = kDefaultMaxAtoms;
  double tol = kDefaultUnitaryTol;
};

/// Lambda_j = Lambda_{j-1} + (R_{m_{j-1}}...R_1)^T {lambda + (R_{m_j}...R_{m_{j-1}+1})^T k_{lambda,j}}
/// over lambda in the composed spectrum of levels m_{j-1}+1..m_j.
struct SpectrumLevels {
  std::size_t dim = 0;
  std::vector<DigitSet> levels;
  std::vector<std::size_t> milestones;
  std::map<KChoiceKey, IntVector> k_choices;
  std::size_t window_exhausted = 0;  ///< windowed choices that landed on the window boundary
};

/// Throws TripleInvalid (a level without L, or failing the Hadamard check),
/// MilestoneGap (a milestone beyond the sequence) and InvalidArgument
/// (milestones not strictly increasing).
[[nodiscard]] SpectrumLevels build_spectrum(const TripleSequence& seq, std::vector<std::size_t> milestones,
                                            const KChooser& chooser = KChooser::zero(),
                                            const SpectrumOptions& options = {});

/// L_1 + R_1^T L_2 + ... + (R_{n-1}...R_1)^T L_n.
[[nodiscard]] DigitSet closed_form_spectrum(const TripleSequence& seq, std::size_t n,
                                            std::size_t max_elements = kDefaultMaxAtoms);

/// One integer vector per line; "# level j milestone m size n" marks where the
/// elements new at level j begin, so the file lists the last level exactly once.
[[nodiscard]] std::string to_text(const SpectrumLevels& s);
/// Throws InvalidArgument on malformed input.
[[nodiscard]] SpectrumLevels parse_spectrum_text(const std::string& text);

/// Q(xi) = sum_{lambda} |mu^(xi + lambda)|^2; 0 for the empty set.
[[nodiscard]] double q_eval(const DiscreteMeasure& m, const DigitSet& lambda, const RatVector& xi);

struct ExactnessReport {
  bool exact = false;
  double deviation = 0.0;  ///< max |G - I| for G = E^* E, E = (1/sqrt n) e^{-2 pi i lambda . x}
};

/// Throws NonUniformWeights and SizeMismatch.
[[nodiscard]] ExactnessReport spectrum_exactness(const DiscreteMeasure& m, const DigitSet& lambda,
                                                 double tol = kDefaultUnitaryTol);

/// Truncated tail transform
///   prod_{j=1..depth} M_{B_{n+j}}((R_{n+j}...R_{n+1})^{-T} xi)
/// evaluated on xi = g/q for integer vectors g. The points P_j^{-1} b / q are
/// reduced once, so each evaluation costs one phase per digit.
class TailEvaluator {
 public:
  /// depth is clipped to the sequence length.
  TailEvaluator(const TripleSequence& seq, std::size_t start, std::size_t depth, const BigInt& q);

  [[nodiscard]] std::complex<double> operator()(IntView g) const;
  [[nodiscard]] std::complex<double> eval(const std::int64_t* g) const;
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t start() const noexcept { return start_; }
  [[nodiscard]] std::size_t depth() const noexcept { return levels_.size(); }
  /// max_b ||P_j^{-1} b||_1 for level j = 1..depth (index j-1).
  [[nodiscard]] const std::vector<double>& level_l1() const noexcept { return l1_; }

 private:
  std::size_t dim_;
  std::size_t start_;
  std::vector<std::vector<PhasePoint>> levels_;
  std::vector<double> l1_;
};

/// r(theta) = cos(theta/2), a lower bound for |(1/m) sum e^{-i x_j}| when all x_j lie
/// in an interval of length theta. Throws ThetaOutOfRange unless 0 <= theta < pi.
[[nodiscard]] double cos_bound(double theta);

struct ConstantBracket {
  double partial = 0.0;     ///< sum_{j=0}^{terms} ln cos eps^j
  double tail_bound = 0.0;  ///< sum_{j>terms} eps^{2j}, bounding the omitted terms
  double lower = 0.0;
  double upper = 0.0;
};

/// C = sum_{j>=0} ln cos eps^j, bracketed using -ln cos x <= x^2 on [0, 1].
/// Throws EpsilonOutOfRange unless 0 < eps < 1.
[[nodiscard]] ConstantBracket tail_constant_C(double eps, std::size_t terms);

/// eps0 - tv. Throws BoundViolation when tv >= eps0.
[[nodiscard]] double perturbation_bound(double tv, double eps0);

/// min{1/4, l/(4(1-l))}.
[[nodiscard]] Rational default_y_radius(const Rational& l);

struct EquiPositivityOptions {
  std::vector<std::size_t> tail_starts{0};
  std::size_t depth = 12;
  Rational x_pitch{BigInt(1), BigInt(32)};  ///< 1/x_pitch must be an integer
  Rational y_radius{BigInt(1), BigInt(12)};
  std::optional<Rational> y_pitch;           ///< default y_radius/8
  int k_window = 0;
  double min_epsilon = 1e-12;                ///< below this a grid point counts as failed
  std::optional<Rational> pcc_level;         ///< enables the proof-side bound
  std::optional<Rational> contraction;       ///< default: the sequence's declared contractivity
};

struct Witness {
  RatVector x;
  IntVector k;
  double value = 0.0;  ///< min over the y-sample of |nu^(x + y + k)|
};

struct TailScan {
  std::size_t start = 0;
  std::size_t depth_used = 0;
  double epsilon = 0.0;
  std::vector<Witness> witnesses;  ///< one per x, in grid order
};

struct ProofBound {
  double r_theta = 0.0;       ///< r((1 - l/2) pi)
  double a = 0.0;             ///< r/(2(2 + r)), so (1 - a) r - a > a
  ConstantBracket c;
  std::size_t j = 1;          ///< smallest J with 2 pi max_b |b . xi_j| <= eps^{j-J} on the scanned levels
  double bound = 0.0;         ///< e^{C} r^{J-1} a
  double truncation_error = 1.0;  ///< 1 - prod_{j > depth} cos(eps^{j-J})
};

struct EquiPositivityReport {
  double epsilon0 = 0.0;
  Rational delta0;
  Rational x_pitch;
  Rational y_pitch;
  std::size_t x_points = 0;
  std::size_t y_points = 0;
  int k_window = 0;
  std::vector<TailScan> tails;
  bool witnessed = false;
  std::optional<std::size_t> failed_start;
  std::optional<RatVector> failed_at;
  std::size_t window_exhausted = 0;
  std::optional<std::size_t> witnesses_stable_from;  ///< first tail start after which all witnesses agree
  std::optional<ProofBound> proof;
};

[[nodiscard]] EquiPositivityReport equi_positivity_scan(const TripleSequence& seq,
                                                        const EquiPositivityOptions& options);

}  // namespace specconv
