#pragma once

// Built-in sequence families.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "specconv/conditions.hpp"
#include "specconv/sequence.hpp"

namespace specconv {

/// Constant (R, B, L) = (4, {0, 2}, {0, 1}) in dimension 1.
[[nodiscard]] TripleSequence jorgensen_pedersen(std::optional<std::size_t> length = std::nullopt);

/// Constant (R, B, L) = (4, {0, 1}, {0, -2}) in dimension 1.
[[nodiscard]] TripleSequence bernoulli_quarter(std::optional<std::size_t> length = std::nullopt);

/// Dimension 2, R_k = diag(8(k+1), 8(k+1)),
///   B_k = {0..k}^2 \ {(k, 0)}  union  {(k + 8^k (k+1)!, 0)},
///   L_k = {(i, j) : i, j in 8 {0..k} - 8 t_k},  t_k = (k+1)/2 for odd k, k/2 for even k.
/// With reduced = true, B_k is replaced by its reduction {0..k}^2 modulo R_k Z^2.
[[nodiscard]] TripleSequence example_2_6(std::optional<std::size_t> max_k = std::nullopt, bool reduced = false);

/// Far digit k + 8^k (k+1)! of the family above.
[[nodiscard]] BigInt example_2_6_far_digit(std::size_t k);

/// Set counts of (B_k, B'_k) for the family above without enumerating B_k:
/// both sets have (k+1)^2 elements and differ in exactly one element each way.
[[nodiscard]] SetPairCounts example_2_6_reduction_counts(std::size_t k);

/// sum_{k >= K} 1/(k+1)^2 = pi^2/6 - 1 - sum_{k < K} 1/(k+1)^2, the head summed exactly.
[[nodiscard]] double example_2_6_defect_tail(std::size_t k);

/// t_k of the family above.
[[nodiscard]] std::int64_t example_2_6_shift(std::size_t k);

struct BuiltinInfo {
  std::string name;
  std::string version;
  std::string description;
};

[[nodiscard]] const std::vector<BuiltinInfo>& builtin_catalog();

/// Looks a builtin up by name ("jorgensen-pedersen", "bernoulli-quarter",
/// "example-2.6", "example-2.6-reduced"). Throws InvalidArgument for unknown names.
[[nodiscard]] TripleSequence make_builtin(const std::string& name, std::optional<std::size_t> max_k);

}  // namespace specconv
