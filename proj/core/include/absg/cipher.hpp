#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "absg/bits.hpp"
#include "absg/exact.hpp"

namespace absg {

// ABSG internal-state symbol.
enum class Sym : std::uint8_t { Empty = 0, Zero = 1, One = 2 };

// One step of the ABSG state transition:
//
//   prev \ x |  0      1
//   ---------+-------------
//   Empty    |  Zero   One
//   Zero     |  Empty  Zero
//   One      |  One    Empty
constexpr Sym absg_step(Sym prev, std::uint8_t x) {
  switch (prev) {
    case Sym::Empty: return x ? Sym::One : Sym::Zero;
    case Sym::Zero:  return x ? Sym::Zero : Sym::Empty;
    case Sym::One:   return x ? Sym::Empty : Sym::One;
  }
  return Sym::Empty;  // unreachable
}

constexpr char sym_char(Sym s) {
  return s == Sym::Empty ? 'e' : (s == Sym::Zero ? '0' : '1');
}

// Incremental ABSG encoder. Consumes one input bit at a time; each time the
// state returns to Empty one block closes and one output bit is emitted.
// Positions are 1-based; the implicit initial Empty sits at position 0.
class AbsgEncoder {
 public:
  struct Emit {
    std::uint8_t z;         // emitted output bit
    std::uint32_t gap;      // gap of the block just closed
    std::size_t empty_pos;  // position of the Empty that closed it
  };

  std::optional<Emit> push(std::uint8_t x_bit);

  std::size_t consumed() const { return pos_; }
  std::size_t last_empty_pos() const { return last_empty_; }
  // input bits past the last closed block (the dropped partial block so far)
  std::size_t tail_bits() const { return pos_ - last_empty_; }
  Sym state() const { return state_; }

 private:
  Sym state_ = Sym::Empty;
  std::size_t pos_ = 0;
  std::size_t last_empty_ = 0;
};

// Full encode record: output bits z, Empty positions H (1-based; H_0 = 0
// implicit), gaps Q_i = H_i - H_{i-1} - 2, and the consumed blocks
// [A_i, B_i] = [H_{i-1}+1, H_i]. |z| = |H| = |Q|; the trailing partial
// block produces no output and is reported via tail_bits.
struct EncodeResult {
  BitSequence z;
  std::vector<std::size_t> empty_positions;
  std::vector<std::uint32_t> gaps;
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  std::size_t consumed = 0;
  std::size_t tail_bits = 0;
};

EncodeResult absg_encode(const BitSequence& x);

inline constexpr int kEnumerationCap = 20;

// Exact Pr[Y_n = Empty] over all 2^n inputs, by exhaustive enumeration.
// Refuses n above the cap (cost 2^n). Matches 1/3 + (2/3)(-1/2)^n.
ExactProb empty_state_prob_exact(int n, int cap = kEnumerationCap);

// Exact Pr[Y_n != Empty, ..., Y_{n+w-1} != Empty] by exhaustive enumeration
// over all 2^{n+w-1} inputs. Matches (2/3 - (2/3)(-1/2)^n) * (1/2)^{w-1}.
ExactProb no_empty_run_prob_exact(int n, int w, int cap = kEnumerationCap);

// Closed forms for the two statistics above, as exact dyadic rationals.
ExactProb empty_state_prob_formula(int n);
ExactProb no_empty_run_prob_formula(int n, int w);

}  // namespace absg
