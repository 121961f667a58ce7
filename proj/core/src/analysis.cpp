#include "absg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "absg/cipher.hpp"
#include "absg/gaps.hpp"

namespace absg {

double wilson_low(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return 0.0;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = p + z2 / (2.0 * n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return std::max(0.0, (center - half) / denom);
}

double wilson_high(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return 1.0;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = p + z2 / (2.0 * n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return std::min(1.0, (center + half) / denom);
}

TrialStats monte_carlo_attack(const StrategySpec& spec, int L, std::uint64_t budget,
                              std::uint64_t trials, std::uint64_t seed) {
  if (static_cast<double>(budget) * static_cast<double>(trials) > 1e9)
    throw std::invalid_argument(
        "monte_carlo_attack: worst case " + std::to_string(budget) + "*" +
        std::to_string(trials) + " checks exceeds the 1e9 cap; split the run");
  auto stream = make_guess_stream(spec, L, budget);

  TrialStats stats;
  stats.trials = trials;
  stats.seed = seed;
  long double query_sum = 0.0L;
  for (std::uint64_t t = 0; t < trials; ++t) {
    GapTruth truth = GapTruth::from_iid(trial_seed(seed, t));
    stream->reset();
    AttackResult r = run_qubar(
        *stream, [&](const Guess& g) { return oracle_check(g, truth); }, budget,
        [&truth] { return std::span<const std::uint8_t>(truth.z_bits()); });
    if (r.success) {
      ++stats.successes;
      query_sum += static_cast<long double>(r.queries_used);
    }
  }
  stats.success_rate =
      trials ? static_cast<double>(stats.successes) / static_cast<double>(trials) : 0.0;
  stats.mean_queries_given_success =
      stats.successes ? static_cast<double>(query_sum / static_cast<long double>(stats.successes))
                      : 0.0;
  stats.wilson_low = wilson_low(stats.successes, trials, kWilson99Z);
  stats.wilson_high = wilson_high(stats.successes, trials, kWilson99Z);
  return stats;
}

namespace {

// Sorted minimal-guess ledger walk; calls `on_class` with each class and the
// number of its minimal elements, until it returns false.
void walk_minimal_ledger(int L, const std::function<bool(const GuessClass&, const Nat&)>& on_class) {
  for (const GuessClass& c : sorted_classes(L)) {
    Nat n = c.minimal_cardinality();
    if (n == 0) continue;
    if (!on_class(c, n)) return;
  }
}

}  // namespace

ExactProb exact_success_at(const StrategySpec& spec, int L, std::uint64_t budget) {
  switch (spec.kind) {
    case StrategySpec::Kind::sorted: {
      if (!spec.minimal_only)
        throw std::invalid_argument(
            "exact_success_at: sorted strategy needs minimal_only (disjoint events)");
      ExactProb mass;
      Nat remaining(static_cast<unsigned long>(budget));
      walk_minimal_ledger(L, [&](const GuessClass& c, const Nat& n) {
        Nat take = n <= remaining ? n : remaining;
        mass += c.element_prob().scaled(take);
        remaining -= take;
        return remaining > 0;
      });
      return mass;
    }
    case StrategySpec::Kind::most_probable: {
      if (L % 2 != 0) throw std::invalid_argument("exact_success_at: L must be even");
      // 1 - (1 - 2^-{L/2})^k, exactly: (2^{kL/2} - (2^{L/2}-1)^k) / 2^{kL/2}
      const auto half = static_cast<unsigned long>(L / 2);
      Nat miss = (Nat(1) << half) - 1;
      Nat miss_pow;
      mpz_pow_ui(miss_pow.get_mpz_t(), miss.get_mpz_t(), static_cast<unsigned long>(budget));
      unsigned long den = half * static_cast<unsigned long>(budget);
      Nat num = (Nat(1) << den) - miss_pow;
      return ExactProb(num, den);
    }
    case StrategySpec::Kind::typical:
      throw std::invalid_argument(
          "exact_success_at: typical strategy is not covered (events neither disjoint-sum "
          "nor independent-product)");
  }
  throw std::invalid_argument("exact_success_at: unknown strategy");
}

std::vector<std::pair<std::uint64_t, ExactProb>> exact_success_curve(
    const StrategySpec& spec, int L, std::span<const std::uint64_t> budgets) {
  std::vector<std::pair<std::uint64_t, ExactProb>> out;
  out.reserve(budgets.size());
  for (auto b : budgets) out.emplace_back(b, exact_success_at(spec, L, b));
  return out;
}

double log2_nat(const Nat& n) {
  if (n <= 0) throw std::invalid_argument("log2_nat: needs a positive value");
  signed long exp2;
  double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp2);
}

namespace {

BoundScanRow scan_row_exhaustive(int L) {
  if (L < 6 || L % 6 != 0)
    throw std::invalid_argument("bound_scan: exhaustive mode needs L divisible by 6, got " +
                                std::to_string(L));
  BoundScanRow row;
  row.L = L;
  row.mode = ScanMode::exhaustive;

  const ExactProb target(1, 1);  // 1/2
  ExactProb cum;
  Nat count(0);
  bool crossed = false;
  walk_minimal_ledger(L, [&](const GuessClass& c, const Nat& n) {
    ExactProb class_mass = c.element_prob().scaled(n);
    if (cum + class_mass > target) {
      // crossing inside this class: smallest k with cum + k*2^-B > 1/2
      const auto B = static_cast<unsigned long>(c.cost());
      Nat deficit_num = ((target - cum).num() << (B - (target - cum).log2_den()));
      Nat k = deficit_num + 1;  // floor(deficit * 2^B) + 1 (deficit has den | 2^B)
      row.mass_before = cum + c.element_prob().scaled(k - 1);
      row.mass_at_c_star = cum + c.element_prob().scaled(k);
      row.c_star = count + k;
      row.crossing_cost = c.cost();
      row.crossing_alpha = c.alpha();
      if (c.theta() == L / 3 && c.alpha() == 0) {
        ExactProb covered = p1_mass(L) + p2_mass(L);
        if (row.mass_at_c_star >= covered) row.p3 = row.mass_at_c_star - covered;
      }
      crossed = true;
      return false;
    }
    cum += class_mass;
    count += n;
    return true;
  });
  if (!crossed)
    throw std::logic_error("bound_scan: ledger never crossed the target at L = " +
                           std::to_string(L));

  // 2^{2L/3} (1/2 - 6/L) = 2^{2L/3} (L - 12) / (2L)
  row.bound_num = (Nat(1) << static_cast<unsigned long>(2 * L / 3)) * (L - 12);
  row.bound_den = 2 * L;
  row.bound_holds = row.c_star * row.bound_den > row.bound_num;
  row.exponent = log2_nat(row.c_star) / static_cast<double>(L);

  row.p1 = p1_mass(L);
  row.p2 = p2_mass(L);
  row.p1_ok = row.p1.compare_ratio(3, L) < 0;
  row.p2_ok = row.p2.compare_ratio(3, L) < 0;
  return row;
}

BoundScanRow scan_row_general(int L) {
  if (L < 2 || L % 2 != 0)
    throw std::invalid_argument("bound_scan: general mode needs even L, got " + std::to_string(L));
  BoundScanRow row;
  row.L = L;
  row.mode = ScanMode::general;
  const auto half = static_cast<unsigned long>(L / 2);
  // every guess is capped at 2^-{L/2}, so the cumulative ledger first
  // exceeds 1/2 at 2^{L/2-1} + 1 cap-sized guesses
  row.c_star = (Nat(1) << (half - 1)) + 1;
  row.mass_at_c_star = ExactProb::pow2_neg(half).scaled(row.c_star);
  row.mass_before = ExactProb::pow2_neg(half).scaled(row.c_star - 1);
  row.bound_num = Nat(1) << (half - 1);
  row.bound_den = 1;
  row.bound_holds = row.c_star > row.bound_num;
  row.exponent = log2_nat(row.c_star) / static_cast<double>(L);
  return row;
}

}  // namespace

std::vector<BoundScanRow> bound_scan(ScanMode mode, std::span<const int> Ls) {
  std::vector<BoundScanRow> rows;
  rows.reserve(Ls.size());
  for (int L : Ls)
    rows.push_back(mode == ScanMode::exhaustive ? scan_row_exhaustive(L) : scan_row_general(L));
  return rows;
}

ExponentFit fit_exponent(std::span<const BoundScanRow> rows) {
  if (rows.size() < 4) throw std::invalid_argument("fit_exponent: needs at least 4 rows");
  const auto n = static_cast<double>(rows.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    const double x = static_cast<double>(r.L);
    const double y = log2_nat(r.c_star);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double det = n * sxx - sx * sx;
  if (det == 0.0) throw std::invalid_argument("fit_exponent: degenerate fit, all L equal");
  ExponentFit fit;
  fit.slope = (n * sxy - sx * sy) / det;
  const double intercept = (sy - fit.slope * sx) / n;
  double ss = 0;
  for (const auto& r : rows) {
    const double e = log2_nat(r.c_star) - (fit.slope * r.L + intercept);
    ss += e * e;
  }
  if (rows.size() > 2)
    fit.stderr_ = std::sqrt(ss / (n - 2.0) / (sxx - sx * sx / n));
  return fit;
}

DistributionTest q_distribution_test(const BitSequence& x) {
  if (x.size() < 10000)
    throw std::invalid_argument("q_distribution_test: needs at least 1e4 input bits");
  EncodeResult enc = absg_encode(x);
  DistributionTest out;
  out.n_gaps = enc.gaps.size();
  if (out.n_gaps < 100)
    throw std::invalid_argument("q_distribution_test: needs at least 100 gaps, got " +
                                std::to_string(out.n_gaps));

  std::vector<std::uint64_t> hist(kHistogramTail + 1, 0);
  for (auto q : enc.gaps) ++hist[std::min(q, kHistogramTail)];

  const auto n = static_cast<double>(out.n_gaps);
  double tv = 0.0;
  double chi2 = 0.0;
  for (std::uint32_t q = 0; q <= kHistogramTail; ++q) {
    // pooled tail mass: sum_{v >= 20} 2^-(v+1) = 2^-20
    const double p = (q < kHistogramTail) ? std::ldexp(1.0, -static_cast<int>(q) - 1)
                                          : std::ldexp(1.0, -static_cast<int>(kHistogramTail));
    const double observed = static_cast<double>(hist[q]) / n;
    tv += std::abs(observed - p);
    const double expected = p * n;
    chi2 += (static_cast<double>(hist[q]) - expected) * (static_cast<double>(hist[q]) - expected) /
            expected;
  }
  out.tv_distance = tv / 2.0;
  out.chi_square = chi2;
  return out;
}

double rate_test(const BitSequence& x) {
  if (x.empty()) return 0.0;
  EncodeResult enc = absg_encode(x);
  return static_cast<double>(enc.z.size()) / static_cast<double>(x.size());
}

}  // namespace absg
