#include "absg/exact.hpp"

#include <algorithm>
#include <cmath>

namespace absg {

Nat binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  Nat r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

void ExactProb::normalize() {
  if (num_ == 0) {
    log2_den_ = 0;
    return;
  }
  unsigned long tz = mpz_scan1(num_.get_mpz_t(), 0);
  unsigned long shift = std::min(tz, log2_den_);
  if (shift > 0) {
    num_ >>= shift;
    log2_den_ -= shift;
  }
}

ExactProb ExactProb::operator+(const ExactProb& o) const {
  unsigned long d = std::max(log2_den_, o.log2_den_);
  Nat a = num_ << (d - log2_den_);
  Nat b = o.num_ << (d - o.log2_den_);
  return ExactProb(a + b, d);
}

ExactProb ExactProb::operator-(const ExactProb& o) const {
  unsigned long d = std::max(log2_den_, o.log2_den_);
  Nat a = num_ << (d - log2_den_);
  Nat b = o.num_ << (d - o.log2_den_);
  if (a < b) throw std::underflow_error("ExactProb: negative difference");
  return ExactProb(a - b, d);
}

ExactProb ExactProb::operator*(const ExactProb& o) const {
  return ExactProb(num_ * o.num_, log2_den_ + o.log2_den_);
}

ExactProb ExactProb::scaled(const Nat& count) const {
  if (count < 0) throw std::invalid_argument("ExactProb::scaled: negative count");
  return ExactProb(num_ * count, log2_den_);
}

std::strong_ordering ExactProb::operator<=>(const ExactProb& o) const {
  unsigned long d = std::max(log2_den_, o.log2_den_);
  Nat a = num_ << (d - log2_den_);
  Nat b = o.num_ << (d - o.log2_den_);
  int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

int ExactProb::compare_ratio(const Nat& p, const Nat& q) const {
  // num / 2^d  vs  p / q   <=>   num * q  vs  p * 2^d
  Nat lhs = num_ * q;
  Nat rhs = p << log2_den_;
  return cmp(lhs, rhs);
}

double ExactProb::to_double() const {
  if (num_ == 0) return 0.0;
  signed long exp2;
  double mant = mpz_get_d_2exp(&exp2, num_.get_mpz_t());
  return std::ldexp(mant, static_cast<int>(exp2 - static_cast<signed long>(log2_den_)));
}

std::string ExactProb::to_string() const {
  if (num_ == 0) return "0";
  if (log2_den_ == 0) return num_.get_str();
  return num_.get_str() + "/2^" + std::to_string(log2_den_);
}

}  // namespace absg
