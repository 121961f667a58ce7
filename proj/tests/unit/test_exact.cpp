#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "absg/exact.hpp"
#include "absg/gaps.hpp"

using namespace absg;

TEST_CASE("dyadic rationals normalize to lowest terms") {
  ExactProb p(6, 4);  // 6/16 -> 3/8
  CHECK(p.num() == 3);
  CHECK(p.log2_den() == 3);
  CHECK(p.to_string() == "3/2^3");

  CHECK(ExactProb(0, 7) == ExactProb::zero());
  CHECK(ExactProb(8, 3) == ExactProb::one());
  CHECK(ExactProb::zero().to_string() == "0");
  CHECK(ExactProb::one().to_string() == "1");
}

TEST_CASE("addition and comparison are exact") {
  ExactProb a(1, 3);  // 1/8
  ExactProb b(3, 5);  // 3/32
  ExactProb s = a + b;
  CHECK(s == ExactProb(7, 5));
  CHECK(a > b);
  CHECK(b < a);
  CHECK((s - b) == a);
  CHECK_THROWS_AS(b - a, std::underflow_error);
}

TEST_CASE("multiplication and scaling") {
  CHECK(ExactProb(3, 4) * ExactProb(1, 1) == ExactProb(3, 5));
  CHECK(ExactProb::pow2_neg(8).scaled(35) == ExactProb(35, 8));
  CHECK(ExactProb::pow2_neg(3).scaled(8) == ExactProb::one());
  CHECK_THROWS_AS(ExactProb(1, 1).scaled(Nat(-1)), std::invalid_argument);
}

TEST_CASE("geometric partial sums reproduce the closed form bit for bit") {
  // sum_{q=0..K} 2^-(q+1) == 1 - 2^-(K+1)
  for (unsigned K = 0; K <= 70; ++K) {
    ExactProb sum;
    for (unsigned q = 0; q <= K; ++q) sum += gap_pmf(q);
    CHECK(sum == ExactProb::one() - ExactProb::pow2_neg(K + 1));
  }
}

TEST_CASE("ratio comparison is exact") {
  ExactProb quarter(1, 2);
  CHECK(quarter.compare_ratio(3, 12) == 0);   // 1/4 == 3/12
  CHECK(quarter.compare_ratio(3, 11) < 0);
  CHECK(quarter.compare_ratio(3, 13) > 0);
  CHECK(ExactProb(3, 4).compare_ratio(3, 18) > 0);
}

TEST_CASE("union-bound ledgers may exceed one") {
  ExactProb ledger;
  for (int i = 0; i < 5; ++i) ledger += ExactProb(1, 1);
  CHECK(ledger == ExactProb(5, 1));
  CHECK(ledger > ExactProb::one());
  CHECK(ledger.to_double() == doctest::Approx(2.5));
}

TEST_CASE("binomial helper agrees with Pascal recursion") {
  for (unsigned long n = 0; n <= 20; ++n) {
    Nat row_sum = 0;
    for (unsigned long k = 0; k <= n; ++k) {
      if (k > 0 && k < n)
        CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
      row_sum += binomial(n, k);
    }
    CHECK(row_sum == (Nat(1) << n));
  }
  CHECK(binomial(15, 7) == 6435);
  CHECK(binomial(3, 7) == 0);
}

TEST_CASE("to_double handles tiny values") {
  CHECK(ExactProb::pow2_neg(10).to_double() == doctest::Approx(0.0009765625));
  CHECK(ExactProb::pow2_neg(1080).to_double() == 0.0);  // below double range
  CHECK(ExactProb(Nat(1) << 100, 110).to_double() == doctest::Approx(0.0009765625));
}
