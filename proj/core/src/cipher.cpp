#include "absg/cipher.hpp"

#include <stdexcept>

namespace absg {

std::optional<AbsgEncoder::Emit> AbsgEncoder::push(std::uint8_t x_bit) {
  ++pos_;
  Sym next = absg_step(state_, x_bit);
  state_ = next;
  if (next != Sym::Empty) return std::nullopt;
  // The step into Empty happens on (Zero,0) or (One,1), so the previous
  // symbol equals x_bit; the output rule collapses to: emit x_bit when the
  // block has no middle bits, its complement otherwise.
  auto gap = static_cast<std::uint32_t>(pos_ - last_empty_ - 2);
  std::uint8_t z = (gap == 0) ? x_bit : static_cast<std::uint8_t>(1 - x_bit);
  Emit e{z, gap, pos_};
  last_empty_ = pos_;
  return e;
}

EncodeResult absg_encode(const BitSequence& x) {
  EncodeResult r;
  AbsgEncoder enc;
  std::size_t prev_empty = 0;
  for (auto b : x.bits) {
    if (auto e = enc.push(b)) {
      r.z.bits.push_back(e->z);
      r.empty_positions.push_back(e->empty_pos);
      r.gaps.push_back(e->gap);
      r.blocks.emplace_back(prev_empty + 1, e->empty_pos);
      prev_empty = e->empty_pos;
    }
  }
  r.consumed = enc.consumed();
  r.tail_bits = enc.tail_bits();
  return r;
}

namespace {

void check_cap(int n, int cap, const char* what) {
  if (n < 1) throw std::invalid_argument(std::string(what) + ": index must be >= 1");
  if (n > cap)
    throw std::invalid_argument(std::string(what) + ": enumeration cost 2^" + std::to_string(n) +
                                " exceeds cap 2^" + std::to_string(cap));
}

}  // namespace

ExactProb empty_state_prob_exact(int n, int cap) {
  check_cap(n, cap, "empty_state_prob_exact");
  std::uint64_t hits = 0;
  const std::uint64_t total = 1ULL << n;
  for (std::uint64_t x = 0; x < total; ++x) {
    Sym s = Sym::Empty;
    for (int i = 0; i < n; ++i) s = absg_step(s, static_cast<std::uint8_t>((x >> i) & 1));
    if (s == Sym::Empty) ++hits;
  }
  return ExactProb(Nat(static_cast<unsigned long>(hits)), static_cast<unsigned long>(n));
}

ExactProb no_empty_run_prob_exact(int n, int w, int cap) {
  if (w < 1) throw std::invalid_argument("no_empty_run_prob_exact: run length must be >= 1");
  check_cap(n + w, cap, "no_empty_run_prob_exact");
  const int m = n + w - 1;  // the events depend on x_1..x_{n+w-1}
  std::uint64_t hits = 0;
  const std::uint64_t total = 1ULL << m;
  for (std::uint64_t x = 0; x < total; ++x) {
    Sym s = Sym::Empty;
    bool ok = true;
    for (int i = 0; i < m; ++i) {
      s = absg_step(s, static_cast<std::uint8_t>((x >> i) & 1));
      if (i + 1 >= n && s == Sym::Empty) {
        ok = false;
        break;
      }
    }
    if (ok) ++hits;
  }
  return ExactProb(Nat(static_cast<unsigned long>(hits)), static_cast<unsigned long>(m));
}

ExactProb empty_state_prob_formula(int n) {
  if (n < 1) throw std::invalid_argument("empty_state_prob_formula: index must be >= 1");
  // 1/3 + (2/3)(-1/2)^n  ==  (2^n + 2(-1)^n) / (3 * 2^n); the numerator is
  // always divisible by 3.
  Nat num = Nat(1) << n;
  if (n % 2 == 0) num += 2; else num -= 2;
  num /= 3;
  return ExactProb(num, static_cast<unsigned long>(n));
}

ExactProb no_empty_run_prob_formula(int n, int w) {
  if (n < 1 || w < 1) throw std::invalid_argument("no_empty_run_prob_formula: n, w must be >= 1");
  // (2/3)(1 - (-1/2)^n) * (1/2)^{w-1}  ==  (2(2^n - (-1)^n)/3) / 2^{n+w-1}
  Nat num = Nat(1) << n;
  if (n % 2 == 0) num -= 1; else num += 1;
  num = 2 * num / 3;
  return ExactProb(num, static_cast<unsigned long>(n + w - 1));
}

}  // namespace absg
