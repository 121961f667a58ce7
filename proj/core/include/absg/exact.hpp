#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace absg {

// Arbitrary-precision natural number. GMP supplies the raw integer
// arithmetic; everything domain-specific sits on top of it.
using Nat = mpz_class;

Nat binomial(unsigned long n, unsigned long k);

// Nonnegative dyadic rational num / 2^log2_den, kept in lowest terms
// (num odd, or num == 0 with log2_den == 0).
//
// Probability ledgers are built from per-guess masses 2^-B; sums, scaled
// sums and comparisons stay loss-free, which is what makes strict
// threshold comparisons (mass > 1/2) meaningful. Cumulative union-bound
// ledgers may exceed 1; values that are actual probabilities stay in [0,1].
class ExactProb {
 public:
  ExactProb() : num_(0), log2_den_(0) {}
  ExactProb(Nat num, unsigned long log2_den) : num_(std::move(num)), log2_den_(log2_den) {
    if (num_ < 0) throw std::invalid_argument("ExactProb: negative numerator");
    normalize();
  }

  static ExactProb zero() { return ExactProb(); }
  static ExactProb one() { return ExactProb(1, 0); }
  // 2^-k
  static ExactProb pow2_neg(unsigned long k) { return ExactProb(1, k); }

  const Nat& num() const { return num_; }
  unsigned long log2_den() const { return log2_den_; }
  bool is_zero() const { return num_ == 0; }

  ExactProb operator+(const ExactProb& o) const;
  // Throws std::underflow_error if the result would be negative.
  ExactProb operator-(const ExactProb& o) const;
  ExactProb operator*(const ExactProb& o) const;
  ExactProb scaled(const Nat& count) const;  // count * value

  ExactProb& operator+=(const ExactProb& o) { return *this = *this + o; }

  bool operator==(const ExactProb& o) const {
    return num_ == o.num_ && log2_den_ == o.log2_den_;
  }
  std::strong_ordering operator<=>(const ExactProb& o) const;

  // Exact comparison against a general rational p/q (q > 0).
  int compare_ratio(const Nat& p, const Nat& q) const;

  double to_double() const;
  // "num/2^k" (or "0", "1").
  std::string to_string() const;

 private:
  void normalize();

  Nat num_;
  unsigned long log2_den_;
};

}  // namespace absg
