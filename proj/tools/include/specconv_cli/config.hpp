#pragma once

// JSON run configuration for the specconv command line tool.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "specconv/bigint.hpp"
#include "specconv/measures.hpp"
#include "specconv/sequence.hpp"

namespace specconv::cli {

/// Malformed document; the message carries the line and column.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed document with a bad field; the message carries the JSON path.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LevelSpec {
  std::vector<std::vector<BigInt>> r;  ///< row-major
  std::vector<std::vector<BigInt>> b;
  std::optional<std::vector<std::vector<BigInt>>> l;
};

struct SequenceSpec {
  std::optional<std::string> builtin;
  std::optional<std::size_t> max_k;
  std::vector<LevelSpec> levels;
  bool cycle = false;  ///< repeat the inline levels periodically
  bool allow_degenerate = false;
  std::optional<Rational> declared_contractivity;
};

struct CheckOptions {
  std::vector<std::string> checks;  ///< empty: every applicable check
  Rational pcc_level{BigInt(1), BigInt(4)};
  std::vector<std::size_t> pcc_subsequence;
  Rational radius{1};
  double cauchy_tol = 1e-10;
};

struct KTableEntry {
  std::vector<BigInt> lambda;
  std::size_t level = 1;
  std::vector<BigInt> k;
};

struct SpectrumCmdOptions {
  std::vector<std::size_t> milestones;  ///< empty: 1..levels
  std::size_t levels = 3;
  std::string chooser = "zero";  ///< zero, windowed or table
  int radius = 2;
  std::size_t depth = 8;
  std::vector<KTableEntry> table;
  std::optional<Rational> delta0;
};

struct QscanOptions {
  std::optional<std::string> spectrum_file;
  std::optional<std::vector<std::vector<BigInt>>> spectrum;
  std::size_t truncation = 2;  ///< K of mu_K; also the level count when no spectrum is given
  Rational lo{0};
  Rational hi{1};
  std::size_t max_points = 1'000'000;
};

struct SampleOptions {
  std::size_t draws = 10'000;
  bool write_draws = true;
  std::int64_t histogram_bins = 8;  ///< unit bins [i, i+1) of the first coordinate of sum X, i < bins
};

struct EquiposOptions {
  std::vector<std::size_t> tail_starts{0};
  std::size_t depth = 12;
  std::optional<Rational> y_radius;  ///< default from pcc_level
  std::optional<Rational> y_pitch;
  int k_window = 0;
  double min_epsilon = 1e-12;
  Rational pcc_level{BigInt(1), BigInt(4)};
  std::optional<std::size_t> transfer_from;  ///< K of the total-variation tail used for the transferred bound
};

struct RunConfig {
  std::optional<std::size_t> dimension;
  SequenceSpec sequence;
  std::optional<SequenceSpec> compare;
  std::size_t upto = 10;
  double tol = 1e-9;
  std::optional<std::uint64_t> seed;
  std::size_t max_atoms = kDefaultMaxAtoms;
  std::optional<Rational> grid_pitch;
  std::optional<std::string> output;
  CheckOptions check;
  SpectrumCmdOptions spectrum;
  QscanOptions qscan;
  SampleOptions sample;
  EquiposOptions equipos;
};

/// Throws ParseError or ValidationError. Unknown fields are rejected.
[[nodiscard]] RunConfig parse_config(const std::string& text);
/// Canonical JSON with every field present; parse_config(emit_config(c)) reproduces c.
[[nodiscard]] std::string emit_config(const RunConfig& c);
/// 64-bit FNV-1a of the canonical form, as 16 hex digits.
[[nodiscard]] std::string config_hash(const RunConfig& c);
[[nodiscard]] std::uint64_t fnv1a64(const std::string& bytes);

/// Builds the sequence; throws ValidationError for inconsistent levels.
[[nodiscard]] TripleSequence make_sequence(const SequenceSpec& s, std::optional<std::size_t> dimension);

}  // namespace specconv::cli
