#include "absg/bits.hpp"

#include <algorithm>
#include <stdexcept>

namespace absg {

FeedbackPolynomial::FeedbackPolynomial(int degree, std::vector<int> taps)
    : degree_(degree), taps_(std::move(taps)) {
  if (degree_ < 2) throw std::invalid_argument("feedback polynomial: degree must be >= 2");
  if (taps_.empty()) throw std::invalid_argument("feedback polynomial: taps must be nonempty");
  std::sort(taps_.begin(), taps_.end());
  taps_.erase(std::unique(taps_.begin(), taps_.end()), taps_.end());
  if (taps_.front() < 1 || taps_.back() > degree_)
    throw std::invalid_argument("feedback polynomial: tap positions must lie in 1..degree");
  if (taps_.back() != degree_)
    throw std::invalid_argument("feedback polynomial: highest tap must equal the degree");
}

FeedbackPolynomial FeedbackPolynomial::from_tap_mask_hex(std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.empty()) throw std::invalid_argument("tap mask: empty hex string");
  std::vector<int> taps;
  int degree = 0;
  // hex digits are big-endian as written; bit (j-1) of the mask <-> tap j
  for (std::size_t idx = 0; idx < hex.size(); ++idx) {
    char c = hex[hex.size() - 1 - idx];
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else throw std::invalid_argument("tap mask: invalid hex digit");
    for (int b = 0; b < 4; ++b) {
      if (v & (1 << b)) {
        int tap = static_cast<int>(idx) * 4 + b + 1;
        taps.push_back(tap);
        degree = std::max(degree, tap);
      }
    }
  }
  if (taps.empty()) throw std::invalid_argument("tap mask: no taps set");
  return FeedbackPolynomial(degree, std::move(taps));
}

std::string FeedbackPolynomial::tap_mask_hex() const {
  int nibbles = (degree_ + 3) / 4;
  std::string out(static_cast<std::size_t>(nibbles), '0');
  auto set_bit = [&](int pos) {  // pos is (tap - 1)
    int nib = pos / 4;
    int bit = pos % 4;
    char& c = out[out.size() - 1 - static_cast<std::size_t>(nib)];
    int v = (c <= '9') ? c - '0' : c - 'a' + 10;
    v |= 1 << bit;
    c = (v < 10) ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10);
  };
  for (int t : taps_) set_bit(t - 1);
  return out;
}

bool LfsrState::all_zero() const {
  return std::all_of(reg.begin(), reg.end(), [](std::uint8_t b) { return b == 0; });
}

LfsrState LfsrState::from_ascii(std::string_view bits) {
  LfsrState s;
  s.reg.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("lfsr state: bits must be 0/1");
    s.reg.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return s;
}

std::string BitSequence::to_ascii() const {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::string BitSequence::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve((bits.size() + 3) / 4);
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    int v = 0;
    for (std::size_t j = 0; j < 4; ++j)
      v = (v << 1) | ((i + j < bits.size()) ? bits[i + j] : 0);
    out.push_back(digits[v]);
  }
  return out;
}

BitSequence BitSequence::from_ascii(std::string_view s) {
  BitSequence out;
  out.bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string: characters must be 0/1");
    out.bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return out;
}

BitSequence BitSequence::from_hex(std::string_view s, std::size_t nbits) {
  if (s.starts_with("0x") || s.starts_with("0X")) s.remove_prefix(2);
  if (s.size() * 4 < nbits) throw std::invalid_argument("hex bit string: too short for requested length");
  BitSequence out;
  out.bits.reserve(nbits);
  for (std::size_t i = 0; i < nbits; ++i) {
    char c = s[i / 4];
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else throw std::invalid_argument("hex bit string: invalid hex digit");
    out.bits.push_back(static_cast<std::uint8_t>((v >> (3 - i % 4)) & 1));
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(seed ^ ((trial + 1) * 0x9e3779b97f4a7c15ULL));
}

std::uint8_t IidBitStream::next() {
  if (bits_left_ == 0) {
    buf_ = splitmix64(seed_ + word_index_);
    ++word_index_;
    bits_left_ = 64;
  }
  std::uint8_t b = static_cast<std::uint8_t>(buf_ & 1);
  buf_ >>= 1;
  --bits_left_;
  return b;
}

BitSequence iid_bits(std::uint64_t seed, std::size_t length) {
  BitSequence out;
  out.bits.reserve(length);
  IidBitStream stream(seed);
  for (std::size_t i = 0; i < length; ++i) out.bits.push_back(stream.next());
  out.provenance.kind = Provenance::Kind::iid;
  out.provenance.seed = seed;
  return out;
}

BitSequence lfsr_generate(const FeedbackPolynomial& poly, const LfsrState& init,
                          std::size_t length) {
  const auto L = static_cast<std::size_t>(poly.degree());
  if (init.reg.size() != L)
    throw std::invalid_argument("lfsr_generate: state length must equal polynomial degree");
  BitSequence out;
  out.bits.reserve(length);
  std::vector<std::uint8_t> reg = init.reg;
  std::size_t head = 0;  // circular buffer: reg[head] is the oldest bit
  for (std::size_t i = 0; i < length; ++i) {
    out.bits.push_back(reg[head]);
    // tap j reads the stream bit j steps back from the one being produced
    std::uint8_t f = 0;
    for (int t : poly.taps())
      f ^= reg[(head + L - static_cast<std::size_t>(t)) % L];
    reg[head] = f;
    head = (head + 1) % L;
  }
  out.provenance.kind = Provenance::Kind::lfsr;
  out.provenance.poly_hex = poly.tap_mask_hex();
  {
    std::string s;
    for (auto b : init.reg) s.push_back(b ? '1' : '0');
    out.provenance.init_bits = s;
  }
  out.provenance.degenerate_all_zero = init.all_zero();
  return out;
}

std::vector<std::uint8_t> lfsr_continue(const FeedbackPolynomial& poly,
                                        std::span<const std::uint8_t> window_tail,
                                        std::size_t length) {
  const auto L = static_cast<std::size_t>(poly.degree());
  if (window_tail.size() != L)
    throw std::invalid_argument("lfsr_continue: window tail must be exactly L bits");
  std::vector<std::uint8_t> reg(window_tail.begin(), window_tail.end());
  std::vector<std::uint8_t> out;
  out.reserve(length);
  std::size_t head = 0;
  for (std::size_t i = 0; i < length; ++i) {
    std::uint8_t f = 0;
    for (int t : poly.taps())
      f ^= reg[(head + L - static_cast<std::size_t>(t)) % L];
    out.push_back(f);
    reg[head] = f;
    head = (head + 1) % L;
  }
  return out;
}

}  // namespace absg
