#include <benchmark/benchmark.h>

#include "specconv/builtins.hpp"
#include "specconv/measures.hpp"
#include "specconv/spectra.hpp"
#include "specconv/triples.hpp"

using namespace specconv;

namespace {

RatVector point(std::size_t d, long long num, long long den) {
  RatVector v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = Rational(BigInt(num + static_cast<long long>(i)), BigInt(den));
  return v;
}

void BM_MaskPhasePoint(benchmark::State& state) {
  const TripleSequence seq = example_2_6();
  const DigitSet b = seq.digits(static_cast<std::size_t>(state.range(0)));
  const PhasePoint xi(point(2, 3, 7919));
  for (auto _ : state) benchmark::DoNotOptimize(mask(b, xi));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(b.size()));
}
BENCHMARK(BM_MaskPhasePoint)->Arg(4)->Arg(20)->Arg(100);

void BM_MaskExact(benchmark::State& state) {
  const TripleSequence seq = example_2_6();
  const DigitSet b = seq.digits(static_cast<std::size_t>(state.range(0)));
  const RatVector xi = point(2, 3, 7919);
  for (auto _ : state) benchmark::DoNotOptimize(mask(b, xi));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(b.size()));
}
BENCHMARK(BM_MaskExact)->Arg(4)->Arg(20);

void BM_HadamardCheck(benchmark::State& state) {
  const Level lv = example_2_6().level(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hadamard_check(lv.r, lv.b, *lv.l));
}
BENCHMARK(BM_HadamardCheck)->Arg(6)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_MuTruncate(benchmark::State& state) {
  const TripleSequence seq = jorgensen_pedersen();
  for (auto _ : state) benchmark::DoNotOptimize(mu_truncate(seq, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_MuTruncate)->Arg(8)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_FourierTruncation(benchmark::State& state) {
  const DiscreteMeasure mu = mu_truncate(example_2_6(), static_cast<std::size_t>(state.range(0)));
  const RatVector xi = point(2, 5, 101);
  for (auto _ : state) benchmark::DoNotOptimize(fourier(mu, xi));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(mu.size()));
}
BENCHMARK(BM_FourierTruncation)->Arg(2)->Arg(3);

void BM_TailEvaluator(benchmark::State& state) {
  const TripleSequence seq = example_2_6(std::nullopt, true);
  const TailEvaluator ev(seq, 0, static_cast<std::size_t>(state.range(0)), BigInt(96));
  const std::int64_t g[2] = {17, -40};
  for (auto _ : state) benchmark::DoNotOptimize(ev.eval(g));
}
BENCHMARK(BM_TailEvaluator)->Arg(4)->Arg(12);

void BM_QEval(benchmark::State& state) {
  const TripleSequence seq = jorgensen_pedersen();
  const auto n = static_cast<std::size_t>(state.range(0));
  const DiscreteMeasure mu = mu_truncate(seq, n);
  const DigitSet lambda = closed_form_spectrum(seq, n);
  const RatVector xi = point(1, 37, 1009);
  for (auto _ : state) benchmark::DoNotOptimize(q_eval(mu, lambda, xi));
}
BENCHMARK(BM_QEval)->Arg(4)->Arg(8);

void BM_BuildSpectrum(benchmark::State& state) {
  const TripleSequence seq = example_2_6();
  std::vector<std::size_t> m;
  for (std::size_t j = 1; j <= static_cast<std::size_t>(state.range(0)); ++j) m.push_back(j);
  for (auto _ : state) benchmark::DoNotOptimize(build_spectrum(seq, m));
}
BENCHMARK(BM_BuildSpectrum)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
