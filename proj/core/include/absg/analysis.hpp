#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "absg/attack.hpp"
#include "absg/bits.hpp"
#include "absg/exact.hpp"

namespace absg {

struct TrialStats {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double success_rate = 0.0;
  double mean_queries_given_success = 0.0;
  double wilson_low = 0.0;   // 99% Wilson interval for the success rate
  double wilson_high = 0.0;
  std::uint64_t seed = 0;
};

// Runs `trials` independent attacks on fresh i.i.d. inputs (trial t is
// seeded with trial_seed(seed, t)) against the oracle check, with lazily
// extended truth so a check can never run out of gaps. Refuses runs whose
// worst-case check count budget*trials exceeds 1e9.
TrialStats monte_carlo_attack(const StrategySpec& spec, int L, std::uint64_t budget,
                              std::uint64_t trials, std::uint64_t seed);

// Exact success probability of the first `budget` guesses.
//   sorted (minimal only): disjoint events, so the dyadic ledger
//     sum of per-guess masses, computed from class counts (no enumeration)
//   most-probable: independent windows, 1 - (1 - 2^-{L/2})^budget
// Other strategies are refused.
ExactProb exact_success_at(const StrategySpec& spec, int L, std::uint64_t budget);

std::vector<std::pair<std::uint64_t, ExactProb>> exact_success_curve(
    const StrategySpec& spec, int L, std::span<const std::uint64_t> budgets);

enum class ScanMode { exhaustive, general };

struct BoundScanRow {
  int L = 0;
  ScanMode mode = ScanMode::exhaustive;
  Nat c_star;                   // minimal guesses until cumulative mass > target
  ExactProb mass_at_c_star;
  ExactProb mass_before;        // after c_star - 1 guesses
  Nat bound_num;                // theorem bound as the exact fraction bound_num/bound_den
  Nat bound_den;
  bool bound_holds = false;     // c_star > bound, exact comparison
  double exponent = 0.0;        // log2(c_star) / L
  ExactProb p1, p2;             // exhaustive mode class-mass aggregates
  std::optional<ExactProb> p3;  // only when the crossing lands inside class (L/3, 0)
  bool p1_ok = false, p2_ok = false;  // p < 3/L, exact
  int crossing_cost = 0;        // B of the class where the target is crossed
  int crossing_alpha = 0;
};

// Exhaustive mode: walks the sorted minimal-guess ledger with closed-form
// class counts until the exact cumulative mass exceeds the target (default
// 1/2); every L must be divisible by 6. General mode: the per-guess cap
// 2^-{L/2} forces c_star = 2^{L/2-1} + 1 for target 1/2; every L must be
// even. No guess is ever enumerated.
std::vector<BoundScanRow> bound_scan(ScanMode mode, std::span<const int> Ls);

struct ExponentFit {
  double slope = 0.0;
  double stderr_ = 0.0;
};

// Least-squares slope of log2(c_star) against L. Needs >= 4 rows and at
// least two distinct L.
ExponentFit fit_exponent(std::span<const BoundScanRow> rows);

double log2_nat(const Nat& n);

struct DistributionTest {
  double tv_distance = 0.0;
  double chi_square = 0.0;
  std::size_t n_gaps = 0;
};

inline constexpr std::uint32_t kHistogramTail = 20;  // gaps above get pooled

// Encodes x, histograms the gaps (tail pooled at q = 20) and compares with
// the geometric(1/2) law: total-variation distance and a chi-square
// statistic. Requires |x| >= 1e4 and at least 100 gaps.
DistributionTest q_distribution_test(const BitSequence& x);

// Output rate |z| / |x|; 0 for empty input.
double rate_test(const BitSequence& x);

double wilson_low(std::uint64_t successes, std::uint64_t trials, double z);
double wilson_high(std::uint64_t successes, std::uint64_t trials, double z);
inline constexpr double kWilson99Z = 2.5758293035489004;

}  // namespace absg
