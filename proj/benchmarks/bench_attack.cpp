#include <benchmark/benchmark.h>

#include "absg/analysis.hpp"
#include "absg/attack.hpp"

using namespace absg;

static void BM_OracleChecks(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  GapTruth truth = GapTruth::from_iid(99);
  truth.gap(64);
  SortedGuessStream stream(L, true);
  std::vector<Guess> guesses;
  while (auto g = stream.next()) {
    guesses.push_back(std::move(*g));
    if (guesses.size() >= 4096) break;
  }
  std::size_t i = 0;
  for (auto _ : state) {
    bool hit = oracle_check(guesses[i], truth);
    benchmark::DoNotOptimize(hit);
    i = (i + 1) % guesses.size();
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_OracleChecks)->Arg(16)->Arg(24);

static void BM_SortedStream(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  SortedGuessStream stream(L, true);
  for (auto _ : state) {
    auto g = stream.next();
    if (!g) {
      stream.reset();
      g = stream.next();
    }
    benchmark::DoNotOptimize(g->q.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_SortedStream)->Arg(16)->Arg(24);

static void BM_LfsrCheck(benchmark::State& state) {
  const int L = 16;
  auto poly = FeedbackPolynomial::from_tap_mask_hex("b400");
  LfsrState init = LfsrState::from_ascii("1010110011010111");
  GapTruth truth = GapTruth::from_lfsr(poly, init);
  std::vector<std::uint32_t> q;
  std::uint64_t span = 0;
  for (std::size_t i = 1; span < static_cast<std::uint64_t>(L); ++i) {
    q.push_back(truth.gap(i));
    span += q.back() + 2;
  }
  Guess g{1, q};
  const std::size_t h = 2 * L;
  truth.gap(g.theta() + h);
  for (auto _ : state) {
    bool hit = lfsr_check(g, truth.z_bits(), poly, h);
    benchmark::DoNotOptimize(hit);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_LfsrCheck);

static void BM_BoundScan(benchmark::State& state) {
  std::vector<int> Ls;
  for (int L = 12; L <= static_cast<int>(state.range(0)); L += 6) Ls.push_back(L);
  for (auto _ : state) {
    auto rows = bound_scan(ScanMode::exhaustive, Ls);
    benchmark::DoNotOptimize(rows.data());
  }
}
BENCHMARK(BM_BoundScan)->Arg(60)->Arg(120);

static void BM_MonteCarloTrial(benchmark::State& state) {
  StrategySpec spec;
  spec.kind = StrategySpec::Kind::most_probable;
  std::uint64_t t = 0;
  for (auto _ : state) {
    GapTruth truth = GapTruth::from_iid(trial_seed(5, t++));
    MostProbableGuessStream stream(20, 1024);
    AttackResult r = run_qubar(
        stream, [&](const Guess& g) { return oracle_check(g, truth); }, 1024,
        [&truth] { return std::span<const std::uint8_t>(truth.z_bits()); });
    benchmark::DoNotOptimize(&r);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_MonteCarloTrial);
