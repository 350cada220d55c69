// Acceptance suite: one PASS/FAIL line per criterion, every tolerance fixed below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "specconv/builtins.hpp"
#include "specconv/conditions.hpp"
#include "specconv/measures.hpp"
#include "specconv/spectra.hpp"
#include "specconv/triples.hpp"

using namespace specconv;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

IntVector ints(std::initializer_list<long long> xs) {
  IntVector v(xs.size());
  std::size_t i = 0;
  for (long long x : xs) v[i++] = BigInt(x);
  return v;
}

// {l_1 + 4 l_2 + ... + 4^{n-1} l_n : l_i in {0, 1}}
DigitSet jp_spectrum_oracle(std::size_t n) {
  std::vector<IntVector> pts;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    long long v = 0;
    long long p = 1;
    for (std::size_t i = 0; i < n; ++i, p *= 4) {
      if (mask >> i & 1) v += p;
    }
    pts.push_back(ints({v}));
  }
  return DigitSet::from_vectors(1, pts);
}

RatVector random_xi(std::mt19937_64& rng, long long max_den) {
  std::uniform_int_distribution<long long> den(1, max_den);
  const long long q = den(rng);
  std::uniform_int_distribution<long long> num(0, q - 1);
  return RatVector{Rational(BigInt(num(rng)), BigInt(q))};
}

// sum_{n >= N} 1/n^2 from the Euler-Maclaurin expansion of the trigamma function
double inverse_square_tail(double n) {
  return 1 / n + 1 / (2 * n * n) + 1 / (6 * std::pow(n, 3)) - 1 / (30 * std::pow(n, 5)) + 1 / (42 * std::pow(n, 7)) -
         1 / (30 * std::pow(n, 9));
}

Outcome criterion_1() {
  const TripleSequence seq = example_2_6();
  double worst = 0.0;
  double slowest = 0.0;
  bool ok = true;
  for (std::size_t k = 1; k <= 6; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    const Level lv = seq.level(k);
    const HadamardReport r = hadamard_check(lv.r, lv.b, *lv.l, 1e-9);
    const double t = seconds_since(t0);
    slowest = std::max(slowest, t);
    worst = std::max(worst, r.max_deviation);
    ok = ok && r.square && r.unitary && r.max_deviation < 1e-9 && t < 1.0;
  }
  return {ok, "example-2.6 k=1..6: max deviation " + fmt("%.3g", worst) + " (< 1e-9), slowest level " +
                  fmt("%.3f", slowest) + " s (< 1 s)"};
}

Outcome criterion_2() {
  const auto t0 = std::chrono::steady_clock::now();
  const TripleSequence seq = jorgensen_pedersen();
  std::mt19937_64 rng(20260102);
  double worst_dev = 0.0;
  double worst_q = 0.0;
  bool ok = true;
  for (std::size_t n = 1; n <= 8; ++n) {
    const DiscreteMeasure mu = mu_truncate(seq, n);
    const DigitSet lambda = jp_spectrum_oracle(n);
    const ExactnessReport e = spectrum_exactness(mu, lambda, 1e-9);
    worst_dev = std::max(worst_dev, e.deviation);
    ok = ok && e.exact && e.deviation < 1e-9;
    for (int i = 0; i < 100; ++i) {
      const double q = q_eval(mu, lambda, random_xi(rng, 10'000));
      worst_q = std::max(worst_q, std::abs(q - 1.0));
      ok = ok && q >= 1.0 - 1e-8 && q <= 1.0 + 1e-8;
    }
  }
  const double t = seconds_since(t0);
  ok = ok && t < 10.0;
  return {ok, "n=1..8: max deviation " + fmt("%.3g", worst_dev) + " (< 1e-9), max |Q - 1| " + fmt("%.3g", worst_q) +
                  " over 800 points (<= 1e-8), " + fmt("%.3f", t) + " s (< 10 s)"};
}

Outcome criterion_3() {
  const auto t0 = std::chrono::steady_clock::now();
  const TripleSequence seq = example_2_6();
  const std::vector<std::vector<std::size_t>> runs = {{1}, {1, 2}, {1, 2, 3}};
  const std::size_t atoms[] = {4, 36, 576};
  bool ok = true;
  double worst = 0.0;
  std::string sizes;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const SpectrumLevels s = build_spectrum(seq, runs[i]);
    const DiscreteMeasure mu = mu_truncate(seq, runs[i].back());
    const ExactnessReport e = spectrum_exactness(mu, s.levels.back(), 1e-8);
    worst = std::max(worst, e.deviation);
    ok = ok && mu.size() == atoms[i] && s.levels.back().size() == atoms[i] && e.deviation < 1e-8;
    sizes += (i ? "/" : "") + std::to_string(mu.size());
  }
  const double t = seconds_since(t0);
  ok = ok && t < 60.0;
  return {ok, "milestones (1), (1,2), (1,2,3): atoms " + sizes + " (4/36/576), max deviation " + fmt("%.3g", worst) +
                  " (< 1e-8), " + fmt("%.3f", t) + " s (< 60 s)"};
}

Outcome criterion_4() {
  const SeriesDiagnostics s = rbc_series(example_2_6(), 1000);
  bool exact = s.terms.size() == 1000;
  for (std::size_t i = 0; i < s.terms.size() && exact; ++i) {
    const long long k = static_cast<long long>(s.indices[i]);
    exact = s.terms[i] == Rational(BigInt(1), BigInt((k + 1) * (k + 1)));
  }
  const double target = std::numbers::pi * std::numbers::pi / 6.0 - 1.0;
  const double err = std::abs(s.partial_sums.back() - target);
  return {exact && err < 1e-3, std::string("terms 1/(k+1)^2 exact for k <= 1000: ") + (exact ? "yes" : "no") +
                                   ", |S_1000 - (pi^2/6 - 1)| = " + fmt("%.6g", err) + " (< 1e-3)"};
}

Outcome criterion_5() {
  const TripleSequence seq = example_2_6();
  const Rational quarter(BigInt(1), BigInt(4));
  double worst = 0.0;
  bool split_ok = true;
  for (std::size_t k = 1; k <= 100; ++k) {
    const IntMatrix r = seq.matrix(k);
    worst = std::max(worst, std::abs(pcc_sup(r) - 1.0 / (4.0 * static_cast<double>(k + 1))));
    const PccSplit sp = pcc_split(r, seq.digits(k), quarter);
    const IntVector far{example_2_6_far_digit(k), BigInt(0)};
    split_ok = split_ok && sp.b2.size() == 1 && sp.b2.contains(far.view());
  }
  const PccDiagnostics p = pcc_series(seq, quarter, {}, 100);
  bool terms_ok = p.series.terms.size() == 100;
  for (std::size_t i = 0; i < p.series.terms.size() && terms_ok; ++i) {
    const long long k = static_cast<long long>(p.series.indices[i]);
    terms_ok = p.series.terms[i] == Rational(BigInt(1), BigInt((k + 1) * (k + 1)));
  }
  return {worst < 1e-12 && split_ok && terms_ok,
          "k <= 100: max |pcc_sup - 1/(4(k+1))| " + fmt("%.3g", worst) + " (< 1e-12), B2 = {far atom}: " +
              (split_ok ? "yes" : "no") + ", terms 1/(k+1)^2 exact: " + (terms_ok ? "yes" : "no")};
}

Outcome criterion_6() {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> dim(1, 3);
  std::uniform_int_distribution<long long> entry(-16, 16);
  std::uniform_int_distribution<int> count(1, 6);
  std::uniform_int_distribution<long long> den(2, 16);
  std::size_t instances = 0;
  std::size_t checked = 0;
  std::size_t disagreements = 0;
  while (instances < 1000) {
    const auto d = static_cast<std::size_t>(dim(rng));
    std::vector<std::vector<BigInt>> rows(d, std::vector<BigInt>(d));
    for (auto& row : rows) {
      for (auto& x : row) x = BigInt(entry(rng));
    }
    const IntMatrix r = IntMatrix::from_rows(rows);
    if (determinant(r).is_zero()) continue;
    std::set<std::vector<long long>> raw;
    const int n = count(rng);
    while (static_cast<int>(raw.size()) < n) {
      std::vector<long long> v(d);
      for (auto& x : v) x = entry(rng);
      raw.insert(v);
    }
    std::vector<IntVector> pts;
    for (const auto& v : raw) {
      IntVector iv(d);
      for (std::size_t i = 0; i < d; ++i) iv[i] = BigInt(v[i]);
      pts.push_back(iv);
    }
    const DigitSet b = DigitSet::from_vectors(d, pts);
    const long long q = den(rng);
    std::uniform_int_distribution<long long> num(1, q - 1);
    const Rational l(BigInt(num(rng)), BigInt(q));
    const PccSplit sp = pcc_split(r, b, l);
    const RatMatrix rinv = invert(r);
    const Rational limit = (Rational(1) - l) / Rational(2);
    for (const auto& x : b) {
      // max over the 2^d vertices xi of [-1, 1]^d of |<R^{-1} b, xi>|
      const RatVector c = apply(rinv, x);
      Rational best;
      for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        Rational s;
        for (std::size_t i = 0; i < d; ++i) s += (mask >> i & 1) ? c[i] : -c[i];
        best = std::max(best, abs(s));
      }
      const bool in_b1 = best < limit;
      if (in_b1 != sp.b1.contains(x) || in_b1 == sp.b2.contains(x)) ++disagreements;
      ++checked;
    }
    ++instances;
  }
  return {disagreements == 0, std::to_string(instances) + " instances, " + std::to_string(checked) +
                                  " digits, disagreements " + std::to_string(disagreements) + " (must be 0)"};
}

Outcome criterion_7() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> size(1, 6);
  std::uniform_int_distribution<long long> value(0, 9);
  const std::size_t draws = 100'000;
  auto random_set = [&] {
    std::set<long long> s;
    const int n = size(rng);
    while (static_cast<int>(s.size()) < n) s.insert(value(rng));
    std::vector<IntVector> v;
    for (long long x : s) v.push_back(ints({x}));
    return DigitSet::from_vectors(1, v);
  };
  double worst_sigmas = 0.0;
  bool ok = true;
  std::uint64_t identical_mismatches = 0;
  for (int pair = 0; pair < 20; ++pair) {
    const DigitSet a = random_set();
    const DigitSet b = random_set();
    std::size_t only_a = 0;
    std::size_t only_b = 0;
    for (const auto& x : a) only_a += b.contains(x) ? 0 : 1;
    for (const auto& x : b) only_b += a.contains(x) ? 0 : 1;
    const double p = std::max(static_cast<double>(only_b) / static_cast<double>(b.size()),
                              static_cast<double>(only_a) / static_cast<double>(a.size()));
    const CouplingReport r = coupled_sample(as_point_sets([&](std::size_t) { return a; }),
                                            as_point_sets([&](std::size_t) { return b; }), 1, draws,
                                            1000 + static_cast<std::uint64_t>(pair), false);
    const double freq = r.levels[0].frequency;
    const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(draws));
    if (sigma == 0.0) {
      ok = ok && r.levels[0].mismatches == (p == 0.0 ? 0u : draws);
    } else {
      worst_sigmas = std::max(worst_sigmas, std::abs(freq - p) / sigma);
      ok = ok && std::abs(freq - p) <= 4.0 * sigma;
    }
    const CouplingReport same = coupled_sample(as_point_sets([&](std::size_t) { return a; }),
                                               as_point_sets([&](std::size_t) { return a; }), 1, draws,
                                               2000 + static_cast<std::uint64_t>(pair), false);
    identical_mismatches += same.levels[0].mismatches;
  }
  ok = ok && identical_mismatches == 0;
  return {ok, "20 pairs, N=10^5: worst deviation " + fmt("%.2f", worst_sigmas) +
                  " sigma (<= 4), mismatches for identical sets " + std::to_string(identical_mismatches) +
                  " (must be 0)"};
}

Outcome criterion_8() {
  const ThreeSeries t = three_series(jorgensen_pedersen(), Rational(1), 60);
  bool zero = true;
  for (const auto& x : t.outside.terms) zero = zero && x.is_zero();
  double mean_err = 0.0;
  for (std::size_t i = 29; i < t.mean.partial_sums.size(); ++i) {
    mean_err = std::max(mean_err, std::abs(t.mean.partial_sums[i][0] - 1.0 / 3.0));
  }
  // increments |S_k - S_30| computed from the exact terms
  Rational tail;
  double incr = 0.0;
  for (std::size_t i = 30; i < t.variance.terms.size(); ++i) {
    tail += t.variance.terms[i];
    incr = std::max(incr, tail.to_double());
  }
  return {zero && mean_err < 1e-9 && incr < 1e-12,
          std::string("r=1: series (i) zero: ") + (zero ? "yes" : "no") + ", max |S_k - 1/3| for k >= 30 " +
              fmt("%.3g", mean_err) + " (< 1e-9), series (iii) increments beyond 30 " + fmt("%.3g", incr) +
              " (< 1e-12)"};
}

Outcome criterion_9() {
  const TripleSequence seq = jorgensen_pedersen();
  std::mt19937_64 rng(9);
  std::vector<RatVector> xs;
  for (int i = 0; i < 100; ++i) xs.push_back(random_xi(rng, 10'000));
  double worst = 0.0;
  for (std::size_t k = 1; k <= 8; ++k) {
    const DiscreteMeasure mu = mu_truncate(seq, k);
    for (std::size_t j = 1; j <= k; ++j) {
      const DigitSet lambda = jp_spectrum_oracle(j);
      for (const auto& xi : xs) worst = std::max(worst, q_eval(mu, lambda, xi));
    }
  }
  return {worst <= 1.0 + 1e-9, "j <= K <= 8, 100 points: max Q " + fmt("%.17g", worst) + " (<= 1 + 1e-9)"};
}

Outcome criterion_10() {
  struct Family {
    const char* name;
    TripleSequence seq;
    std::size_t levels;
  };
  // every level whose composed digit set stays within the default cap of 10^6
  const Family families[] = {{"jorgensen-pedersen", jorgensen_pedersen(), 19}, {"example-2.6", example_2_6(), 5}};
  bool ok = true;
  std::string detail;
  for (const auto& f : families) {
    std::vector<std::size_t> milestones;
    for (std::size_t j = 1; j <= f.levels; ++j) milestones.push_back(j);
    const SpectrumLevels s = build_spectrum(f.seq, milestones);
    std::vector<HadamardTriple> ts;
    std::size_t verified = 0;
    for (std::size_t n = 1; n <= f.levels; ++n) {
      const Level lv = f.seq.level(n);
      ts.emplace_back(lv.r, lv.b, *lv.l);
      DigitSet composed;
      // the product triple is re-verified while its Gram matrix stays small
      if (s.levels[n - 1].size() <= 1024) {
        composed = compose_triples(ts).l();
        ++verified;
      } else {
        composed = compose_components(f.seq, 1, n).l;
      }
      // both sets are kept sorted, so equal sets have equal coordinate arrays
      ok = ok && composed.dim() == s.levels[n - 1].dim() && composed.flat() == s.levels[n - 1].flat();
    }
    detail += std::string(detail.empty() ? "" : "; ") + f.name + " levels 1.." + std::to_string(f.levels) + " (" +
              std::to_string(verified) + " re-verified)";
  }
  return {ok, detail + ": equal sets " + (ok ? "yes" : "no")};
}

Outcome criterion_11() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> theta_d(0.0, 3.0);
  std::uniform_int_distribution<int> m_d(1, 24);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 1.0;
  for (int trial = 0; trial < 10'000; ++trial) {
    const double theta = theta_d(rng);
    const int m = m_d(rng);
    const double start = 2 * std::numbers::pi * unit(rng);
    std::complex<double> s = 0.0;
    for (int j = 0; j < m; ++j) s += std::polar(1.0, -(start + theta * unit(rng)));
    worst = std::min(worst, std::abs(s) / m - cos_bound(theta));
  }
  return {worst >= -1e-12, "10^4 draws, theta in [0, 3): min |mean| - cos(theta/2) = " + fmt("%.3g", worst) +
                               " (>= -1e-12)"};
}

Outcome criterion_12() {
  const TripleSequence seq = example_2_6(std::nullopt, true);
  EquiPositivityOptions o;
  o.depth = 12;
  o.k_window = 0;
  o.x_pitch = Rational(BigInt(1), BigInt(32));
  o.pcc_level = Rational(BigInt(1), BigInt(4));
  o.y_radius = default_y_radius(*o.pcc_level);
  const EquiPositivityReport r = equi_positivity_scan(seq, o);
  const double tv = 2.0 * inverse_square_tail(101.0);
  const bool tail_agrees = std::abs(tv - 2.0 * example_2_6_defect_tail(100)) < 1e-15;
  double transferred = -1.0;
  try {
    transferred = perturbation_bound(tv, r.epsilon0);
  } catch (const BoundViolation&) {
  }
  return {r.witnessed && r.epsilon0 > 0.0 && transferred > 0.0 && tail_agrees,
          std::string("status ") + (r.witnessed ? "witnessed" : "failed") + ", epsilon0 " + fmt("%.6g", r.epsilon0) +
              " (> 0), TV tail at K=100 " + fmt("%.6g", tv) + ", transferred bound " + fmt("%.6g", transferred) +
              " (> 0)"};
}

Outcome criterion_13() {
  // (a) far-atom first coordinates (k + 8^k (k+1)!) / (8^k (k+1)!) sum to at least K
  const TripleSequence seq = example_2_6();
  const PointSetSequence scaled = scaled_digit_sets(seq);
  Rational sum;
  bool linear = true;
  for (unsigned k = 1; k <= 200; ++k) {
    const BigInt scale = pow(BigInt(8), k) * factorial(k + 1);
    const BigInt far = BigInt(k) + scale;
    linear = linear && example_2_6_far_digit(k) == far;
    if (k <= 12) {
      const PointSet pts = scaled(k);
      const Rational x(far, scale);
      linear = linear && std::any_of(pts.begin(), pts.end(), [&](const RatVector& p) { return p[0] == x; });
    }
    sum += Rational(far, scale);
    linear = linear && sum >= Rational(BigInt(k)) && sum < Rational(BigInt(k + 1));
  }
  // (b) sampled first-coordinate partial sums at K = 20
  const std::size_t draws = 100'000;
  const TripleSequence capped = example_2_6(20);
  const PointSetSequence s20 = scaled_digit_sets(capped);
  const CouplingReport r = coupled_sample(s20, s20, 20, draws, 13, true);
  std::size_t above = 0;
  for (std::size_t n = 0; n < draws; ++n) above += r.sums_x[n * 2] > 10.0 ? 1 : 0;
  const double freq = static_cast<double>(above) / static_cast<double>(draws);
  return {linear && freq > 0.99, std::string("(a) K <= S_K < K + 1 for K <= 200: ") + (linear ? "yes" : "no") +
                                     "; (b) P(first coordinate at K=20 > 10) = " + fmt("%.5f", freq) + " (> 0.99)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"Hadamard unitarity, example-2.6", criterion_1},
      {"finite-level spectrality, jorgensen-pedersen", criterion_2},
      {"finite-level spectrality, example-2.6", criterion_3},
      {"RBC series, example-2.6", criterion_4},
      {"PCC, example-2.6", criterion_5},
      {"l1 / vertex equivalence", criterion_6},
      {"coupling frequencies", criterion_7},
      {"three-series, jorgensen-pedersen", criterion_8},
      {"Bessel inequality", criterion_9},
      {"composition cross-check", criterion_10},
      {"cos(theta/2) lower bound", criterion_11},
      {"equi-positivity scan, example-2.6 reduced", criterion_12},
      {"non-compact support, example-2.6", criterion_13},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s criterion %2zu  %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
