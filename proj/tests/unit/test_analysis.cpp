#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "absg/analysis.hpp"
#include "absg/cipher.hpp"
#include "absg/gaps.hpp"
#include "absg/reconstruct.hpp"

using namespace absg;

namespace {

StrategySpec sorted_spec() {
  StrategySpec s;
  s.kind = StrategySpec::Kind::sorted;
  return s;
}

StrategySpec most_probable_spec() {
  StrategySpec s;
  s.kind = StrategySpec::Kind::most_probable;
  return s;
}

}  // namespace

TEST_CASE("zero budget never succeeds") {
  TrialStats stats = monte_carlo_attack(most_probable_spec(), 12, 0, 200, 5);
  CHECK(stats.successes == 0);
  CHECK(stats.success_rate == 0.0);
}

TEST_CASE("monte carlo matches the exact curve at small scale") {
  const std::uint64_t budget = 64, trials = 4000;
  TrialStats stats = monte_carlo_attack(most_probable_spec(), 12, budget, trials, 99);
  double exact = exact_success_at(most_probable_spec(), 12, budget).to_double();
  CHECK(stats.wilson_low <= exact);
  CHECK(exact <= stats.wilson_high);
  CHECK(stats.trials == trials);
  CHECK(stats.successes <= trials);
}

TEST_CASE("infeasible runs are refused with a cost estimate") {
  CHECK_THROWS_WITH_AS(monte_carlo_attack(sorted_spec(), 20, 1u << 20, 10000, 1),
                       doctest::Contains("1e9"), std::invalid_argument);
}

TEST_CASE("exact success curve: sorted ledger") {
  CHECK(exact_success_at(sorted_spec(), 12, 1) == ExactProb(1, 6));  // 1/64
  // after the whole class (6,0) plus the 15 elements of (5,0)
  CHECK(exact_success_at(sorted_spec(), 12, 16) == ExactProb(1, 6) + ExactProb(15, 7));
  // frozen crossing values from the ledger scan
  CHECK(exact_success_at(sorted_spec(), 12, 111) == ExactProb(257, 9));
  CHECK(exact_success_at(sorted_spec(), 12, 110) == ExactProb(1, 1));
  // a budget past the stream's end yields the whole stream's mass: the
  // stopping-prefix masses of every window with cost below L
  ExactProb whole = exact_success_at(sorted_spec(), 12, 1u << 30);
  CHECK(whole == ExactProb(119, 7));
  SortedGuessStream stream(12, true);
  ExactProb brute;
  while (auto g = stream.next()) brute += guess_probability(g->q);
  CHECK(brute == whole);
}

TEST_CASE("exact success curve: most-probable product form") {
  // 1 - (63/64)^64 exactly
  ExactProb p = exact_success_at(most_probable_spec(), 12, 64);
  Nat miss = 63;
  Nat pow;
  mpz_pow_ui(pow.get_mpz_t(), miss.get_mpz_t(), 64);
  ExactProb expect = ExactProb::one() - ExactProb(pow, 6 * 64);
  CHECK(p == expect);
  CHECK(p.to_double() == doctest::Approx(1.0 - std::pow(63.0 / 64.0, 64.0)));
}

TEST_CASE("exact success curve is monotone in the budget") {
  std::vector<std::uint64_t> budgets{0, 1, 2, 5, 17, 50, 111, 200, 500};
  for (auto spec : {sorted_spec(), most_probable_spec()}) {
    auto curve = exact_success_curve(spec, 12, budgets);
    for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].second >= curve[i - 1].second);
    CHECK(curve.front().second == ExactProb::zero());
  }
}

TEST_CASE("uncovered strategies are refused") {
  StrategySpec typical;
  typical.kind = StrategySpec::Kind::typical;
  CHECK_THROWS_AS(exact_success_at(typical, 12, 5), std::invalid_argument);
  StrategySpec dup = sorted_spec();
  dup.minimal_only = false;
  CHECK_THROWS_AS(exact_success_at(dup, 12, 5), std::invalid_argument);
}

TEST_CASE("bound scan rows carry the frozen exact values") {
  std::vector<int> Ls{12, 18, 24};
  auto rows = bound_scan(ScanMode::exhaustive, Ls);
  REQUIRE(rows.size() == 3);

  CHECK(rows[0].c_star == 111);
  CHECK(rows[0].mass_at_c_star == ExactProb(257, 9));
  CHECK(rows[0].mass_before == ExactProb(1, 1));
  CHECK(rows[0].p1 == ExactProb(3, 4));
  CHECK(rows[0].p2 == ExactProb(1, 2));
  CHECK(rows[0].bound_holds);  // bound is 0 at L = 12
  CHECK(rows[0].p1_ok);
  CHECK_FALSE(rows[0].p2_ok);  // exactly 3/L, not below

  CHECK(rows[1].c_star == 1697);
  CHECK(rows[1].p1 == ExactProb(241, 10));
  CHECK_FALSE(rows[1].p1_ok);
  CHECK(rows[1].bound_holds);

  CHECK(rows[2].c_star == 26166);
  CHECK(rows[2].bound_holds);

  for (const auto& r : rows) {
    CHECK(r.mass_before <= ExactProb(1, 1));
    CHECK(r.mass_at_c_star > ExactProb(1, 1));
    CHECK_FALSE(r.p3.has_value());  // the crossing lands past cost 2L/3
    CHECK(r.crossing_cost > 2 * r.L / 3);
  }

  std::vector<int> bad{14};
  CHECK_THROWS_AS(bound_scan(ScanMode::exhaustive, bad), std::invalid_argument);
}

TEST_CASE("bound scan cross-checked by stream enumeration at L = 12") {
  // independent oracle: walk the actual minimal guess stream
  SortedGuessStream stream(12, true);
  ExactProb mass;
  Nat count(0);
  while (mass <= ExactProb(1, 1)) {
    auto g = stream.next();
    REQUIRE(g.has_value());
    mass += guess_probability(g->q);
    count += 1;
  }
  std::vector<int> Ls{12};
  auto rows = bound_scan(ScanMode::exhaustive, Ls);
  CHECK(rows[0].c_star == count);
  CHECK(rows[0].mass_at_c_star == mass);
}

TEST_CASE("general-mode scan uses the per-guess cap") {
  std::vector<int> Ls{20};
  auto rows = bound_scan(ScanMode::general, Ls);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].bound_num == 512);  // 2^{L/2 - 1}
  CHECK(rows[0].bound_den == 1);
  CHECK(rows[0].c_star == 513);
  CHECK(rows[0].bound_holds);
  CHECK(rows[0].mass_at_c_star > ExactProb(1, 1));
  CHECK(rows[0].mass_before <= ExactProb(1, 1));
}

TEST_CASE("exponent fit") {
  // synthetic rows with c_star = 2^{2L/3} exactly give slope 2/3
  std::vector<BoundScanRow> rows;
  for (int L : {12, 18, 24, 30}) {
    BoundScanRow r;
    r.L = L;
    r.c_star = Nat(1) << static_cast<unsigned long>(2 * L / 3);
    rows.push_back(r);
  }
  ExponentFit fit = fit_exponent(rows);
  CHECK(fit.slope == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  std::vector<BoundScanRow> few(rows.begin(), rows.begin() + 3);
  CHECK_THROWS_AS(fit_exponent(few), std::invalid_argument);

  std::vector<BoundScanRow> degenerate(4, rows[0]);
  CHECK_THROWS_AS(fit_exponent(degenerate), std::invalid_argument);
}

TEST_CASE("general-mode scan fits a half exponent") {
  std::vector<int> Ls;
  for (int L = 12; L <= 40; L += 2) Ls.push_back(L);
  auto rows = bound_scan(ScanMode::general, Ls);
  ExponentFit fit = fit_exponent(rows);
  CHECK(fit.slope >= 0.45);
  CHECK(fit.slope <= 0.55);

  std::vector<int> odd{15};
  CHECK_THROWS_AS(bound_scan(ScanMode::general, odd), std::invalid_argument);
}

TEST_CASE("gap distribution test accepts the null and rejects bias") {
  BitSequence x = iid_bits(777, 1000000);
  DistributionTest d = q_distribution_test(x);
  CHECK(d.tv_distance < 0.01);
  CHECK(d.n_gaps > 300000);

  // synthetic gaps drawn from the law itself, rebuilt into an input
  IidBitStream rnd(31);
  std::vector<std::uint8_t> z;
  std::vector<std::uint32_t> q;
  for (int i = 0; i < 120000; ++i) {
    z.push_back(rnd.next());
    std::uint32_t g = 0;
    while (rnd.next()) ++g;
    q.push_back(g);
  }
  DistributionTest synth = q_distribution_test(x_from_gaps(z, q));
  CHECK(synth.tv_distance < 0.01);

  // Bernoulli(45/64 ~ 0.7)-biased input visibly shifts the gap law
  BitSequence biased;
  IidBitStream coin(55);
  for (int i = 0; i < 1000000; ++i) {
    unsigned u = 0;
    for (int b = 0; b < 6; ++b) u = (u << 1) | coin.next();
    biased.bits.push_back(static_cast<std::uint8_t>(u < 45));
  }
  DistributionTest shifted = q_distribution_test(biased);
  CHECK(shifted.tv_distance > 0.05);

  CHECK_THROWS_AS(q_distribution_test(iid_bits(1, 100)), std::invalid_argument);
}

TEST_CASE("output rate") {
  CHECK(rate_test(iid_bits(4242, 1000000)) == doctest::Approx(1.0 / 3.0).epsilon(0.03));
  double r = rate_test(iid_bits(4242, 1000000));
  CHECK(r >= 0.323);
  CHECK(r <= 0.343);

  std::string zeros(2000, '0');
  CHECK(rate_test(BitSequence::from_ascii(zeros)) == 0.5);

  CHECK(rate_test(BitSequence::from_ascii("1")) == 0.0);
  CHECK(rate_test(BitSequence{}) == 0.0);
}

TEST_CASE("wilson interval basics") {
  CHECK(wilson_low(0, 100, kWilson99Z) == 0.0);
  CHECK(wilson_high(100, 100, kWilson99Z) == 1.0);
  double lo = wilson_low(50, 100, kWilson99Z);
  double hi = wilson_high(50, 100, kWilson99Z);
  CHECK(lo > 0.35);
  CHECK(lo < 0.5);
  CHECK(hi > 0.5);
  CHECK(hi < 0.65);
}
