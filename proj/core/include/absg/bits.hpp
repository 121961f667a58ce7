#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace absg {

// Fibonacci LFSR feedback polynomial of degree L, given by tap positions
// in 1..L (the degree tap is always present). Recurrence over GF(2):
//   x[n] = XOR over taps j of x[n - j],  n > L.
// Serialized as a hex tap mask, little-endian in tap position: bit (j-1)
// of the mask is set iff j is a tap. Example: taps {1,4} -> 0x9.
class FeedbackPolynomial {
 public:
  FeedbackPolynomial(int degree, std::vector<int> taps);

  static FeedbackPolynomial from_tap_mask_hex(std::string_view hex);
  std::string tap_mask_hex() const;

  int degree() const { return degree_; }
  const std::vector<int>& taps() const { return taps_; }

  bool operator==(const FeedbackPolynomial&) const = default;

 private:
  int degree_;
  std::vector<int> taps_;  // sorted ascending, back() == degree_
};

// LFSR register snapshot; reg[0] is the oldest bit, i.e. the next
// output bit of the stream.
struct LfsrState {
  std::vector<std::uint8_t> reg;

  bool all_zero() const;
  static LfsrState from_ascii(std::string_view bits);
};

struct Provenance {
  enum class Kind { external, iid, lfsr };
  Kind kind = Kind::external;
  std::uint64_t seed = 0;        // iid
  std::string poly_hex;          // lfsr
  std::string init_bits;         // lfsr
  bool degenerate_all_zero = false;
};

// Finite ordered bit sequence plus how it was generated.
struct BitSequence {
  std::vector<std::uint8_t> bits;
  Provenance provenance;

  BitSequence() = default;
  explicit BitSequence(std::vector<std::uint8_t> b) : bits(std::move(b)) {}

  std::size_t size() const { return bits.size(); }
  bool empty() const { return bits.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits[i]; }

  std::string to_ascii() const;
  // MSB-first per byte, zero-padded in the last byte.
  std::string to_hex() const;

  static BitSequence from_ascii(std::string_view s);
  static BitSequence from_hex(std::string_view s, std::size_t nbits);
};

// SplitMix64 output mixer; also the documented per-trial seed mixer.
std::uint64_t splitmix64(std::uint64_t x);

// Seed for trial t of a run seeded with `seed`:
//   splitmix64(seed ^ ((t + 1) * 0x9e3779b97f4a7c15))
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

// Counter-based i.i.d. Bernoulli(1/2) stream: word k is
// splitmix64(seed + k), consumed LSB-first. Generating a prefix and then
// extending it agrees with generating the longer sequence outright.
class IidBitStream {
 public:
  explicit IidBitStream(std::uint64_t seed) : seed_(seed) {}
  std::uint8_t next();
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t word_index_ = 0;
  std::uint64_t buf_ = 0;
  int bits_left_ = 0;
};

BitSequence iid_bits(std::uint64_t seed, std::size_t length);

// Fibonacci generation: output bit t is the oldest register bit, so the
// stream restricted to positions t..t+L-1 equals the register at time t.
// An all-zero init yields the all-zero stream, flagged in provenance.
BitSequence lfsr_generate(const FeedbackPolynomial& poly, const LfsrState& init,
                          std::size_t length);

// Continue a stream whose last L bits are `window_tail`: returns the next
// `length` bits after the window.
std::vector<std::uint8_t> lfsr_continue(const FeedbackPolynomial& poly,
                                        std::span<const std::uint8_t> window_tail,
                                        std::size_t length);

}  // namespace absg
