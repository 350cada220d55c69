#include "specconv/builtins.hpp"

#include <numbers>

namespace specconv {

namespace {

TripleSequence constant_1d(std::int64_t r, std::vector<BigInt> b, std::vector<BigInt> l,
                           std::optional<std::size_t> length, std::string name) {
  const IntMatrix rm = IntMatrix::scalar(1, BigInt(r));
  const DigitSet bs = DigitSet::from_scalars(b);
  const DigitSet ls = DigitSet::from_scalars(l);
  TripleSequence::Source src;
  src.dim = 1;
  src.matrix = [rm](std::size_t) { return rm; };
  src.digits = [bs](std::size_t) { return bs; };
  src.spectrum = [ls](std::size_t) { return std::optional<DigitSet>(ls); };
  src.length = length;
  src.name = std::move(name);
  TripleSequence seq(std::move(src));
  seq.set_declared_contractivity(Rational(BigInt(1), BigInt(r)));
  return seq;
}

// 1/(K+1) >= sum_{n >= K+2} 1/n^2
double inverse_square_tail(std::size_t k) { return 1.0 / static_cast<double>(k + 1); }

}  // namespace

TripleSequence jorgensen_pedersen(std::optional<std::size_t> length) {
  return constant_1d(4, {0, 2}, {0, 1}, length, "jorgensen-pedersen");
}

TripleSequence bernoulli_quarter(std::optional<std::size_t> length) {
  return constant_1d(4, {0, 1}, {0, -2}, length, "bernoulli-quarter");
}

BigInt example_2_6_far_digit(std::size_t k) {
  return BigInt(static_cast<std::uint64_t>(k)) +
         pow(BigInt(8), static_cast<unsigned>(k)) * factorial(static_cast<unsigned>(k + 1));
}

std::int64_t example_2_6_shift(std::size_t k) {
  const auto kk = static_cast<std::int64_t>(k);
  return kk % 2 == 1 ? (kk + 1) / 2 : kk / 2;
}

TripleSequence example_2_6(std::optional<std::size_t> max_k, bool reduced) {
  TripleSequence::Source src;
  src.dim = 2;
  src.matrix = [](std::size_t k) { return IntMatrix::scalar(2, BigInt(static_cast<std::int64_t>(8 * (k + 1)))); };
  src.digits = [reduced](std::size_t k) {
    const auto kk = static_cast<std::int64_t>(k);
    std::vector<BigInt> flat;
    flat.reserve(2 * (k + 1) * (k + 1));
    // lexicographic order: the far digit has the largest first coordinate
    for (std::int64_t i = 0; i <= kk; ++i) {
      for (std::int64_t j = 0; j <= kk; ++j) {
        if (!reduced && i == kk && j == 0) continue;
        flat.emplace_back(i);
        flat.emplace_back(j);
      }
    }
    if (!reduced) {
      flat.push_back(example_2_6_far_digit(k));
      flat.emplace_back(0);
    }
    return DigitSet::from_sorted_flat(2, std::move(flat));
  };
  src.spectrum = [](std::size_t k) {
    const auto kk = static_cast<std::int64_t>(k);
    const std::int64_t t = example_2_6_shift(k);
    std::vector<BigInt> flat;
    flat.reserve(2 * (k + 1) * (k + 1));
    for (std::int64_t i = 0; i <= kk; ++i) {
      for (std::int64_t j = 0; j <= kk; ++j) {
        flat.emplace_back(8 * (i - t));
        flat.emplace_back(8 * (j - t));
      }
    }
    return std::optional<DigitSet>(DigitSet::from_sorted_flat(2, std::move(flat)));
  };
  src.length = max_k;
  src.name = reduced ? "example-2.6-reduced" : "example-2.6";
  TripleSequence seq(std::move(src));
  seq.set_declared_contractivity(Rational(BigInt(1), BigInt(16)));

  SeriesTailBounds tails;
  if (reduced) {
    const TailBound zero{"all terms vanish", [](std::size_t) { return 0.0; }};
    tails.rbc = zero;
    tails.pcc = zero;
    tails.pcc_max_l = Rational(BigInt(1), BigInt(2));
  } else {
    const TailBound inv{"terms 1/(k+1)^2, tail <= 1/(K+1)", inverse_square_tail};
    tails.rbc = inv;
    tails.pcc = inv;
    // ||R_k^{-1} b||_1 <= 2k/(8(k+1)) < 1/4 <= (1-l)/2 for every near digit
    tails.pcc_max_l = Rational(BigInt(1), BigInt(2));
    tails.reduction_defect = inv;
  }
  seq.set_tail_bounds(std::move(tails));
  return seq;
}

const std::vector<BuiltinInfo>& builtin_catalog() {
  static const std::vector<BuiltinInfo> catalog = {
      {"jorgensen-pedersen", "1", "R = 4, B = {0,2}, L = {0,1} in dimension 1"},
      {"bernoulli-quarter", "1", "R = 4, B = {0,1}, L = {0,-2} in dimension 1"},
      {"example-2.6", "1",
       "R_k = diag(8(k+1),8(k+1)); B_k = {0..k}^2 \\ {(k,0)} + {(k+8^k(k+1)!,0)}; "
       "L_k = {(i,j): i,j in 8{0..k} - 8t_k}, t_k = (k+1)/2 (k odd), k/2 (k even)"},
      {"example-2.6-reduced", "1", "example-2.6 with B_k reduced modulo R_k Z^2, i.e. B'_k = {0..k}^2"},
  };
  return catalog;
}

TripleSequence make_builtin(const std::string& name, std::optional<std::size_t> max_k) {
  if (name == "jorgensen-pedersen") return jorgensen_pedersen(max_k);
  if (name == "bernoulli-quarter") return bernoulli_quarter(max_k);
  if (name == "example-2.6") return example_2_6(max_k, false);
  if (name == "example-2.6-reduced") return example_2_6(max_k, true);
  throw InvalidArgument("unknown builtin sequence '" + name + "'");
}

SetPairCounts example_2_6_reduction_counts(std::size_t k) {
  if (k == 0) throw IndexOutOfRange("levels are indexed from 1");
  const std::size_t n = (k + 1) * (k + 1);
  return {n, n, 1, 1};
}

double example_2_6_defect_tail(std::size_t k) {
  if (k == 0) throw IndexOutOfRange("levels are indexed from 1");
  Rational head;
  for (std::size_t j = 1; j < k; ++j) head += Rational(BigInt(1), BigInt(static_cast<std::uint64_t>((j + 1) * (j + 1))));
  return std::numbers::pi * std::numbers::pi / 6.0 - 1.0 - head.to_double();
}

}  // namespace specconv
