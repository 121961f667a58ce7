#include <benchmark/benchmark.h>

#include "absg/analysis.hpp"
#include "absg/bits.hpp"
#include "absg/cipher.hpp"

using namespace absg;

static void BM_IidBits(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    BitSequence x = iid_bits(42, n);
    benchmark::DoNotOptimize(x.bits.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_IidBits)->Range(1 << 10, 1 << 20);

static void BM_Encode(benchmark::State& state) {
  BitSequence x = iid_bits(42, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    EncodeResult r = absg_encode(x);
    benchmark::DoNotOptimize(r.z.bits.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_Encode)->Range(1 << 10, 1 << 20);

static void BM_LfsrGenerate(benchmark::State& state) {
  auto poly = FeedbackPolynomial::from_tap_mask_hex("b400");
  LfsrState init = LfsrState::from_ascii("1010110011010111");
  for (auto _ : state) {
    BitSequence x = lfsr_generate(poly, init, static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(x.bits.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_LfsrGenerate)->Range(1 << 10, 1 << 18);

static void BM_ExactYStats(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ExactProb p = empty_state_prob_exact(n);
    benchmark::DoNotOptimize(&p);
  }
}
BENCHMARK(BM_ExactYStats)->DenseRange(12, 20, 4);

static void BM_DistributionTest(benchmark::State& state) {
  BitSequence x = iid_bits(7, 1 << 20);
  for (auto _ : state) {
    DistributionTest d = q_distribution_test(x);
    benchmark::DoNotOptimize(&d);
  }
}
BENCHMARK(BM_DistributionTest);
