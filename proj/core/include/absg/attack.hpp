#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absg/bits.hpp"
#include "absg/cipher.hpp"
#include "absg/exact.hpp"
#include "absg/gaps.hpp"
#include "absg/reconstruct.hpp"

namespace absg {

// A guess asserts theta consecutive gap values starting at output index
// `start` (1-based). Valid at degree L when 2*theta + beta >= L, i.e. the
// asserted blocks cover at least L input bits.
struct Guess {
  std::size_t start = 1;
  std::vector<std::uint32_t> q;

  std::size_t theta() const { return q.size(); }
  std::uint64_t beta() const { return vector_beta(q); }
  std::uint64_t cost() const { return theta() + beta(); }  // B; marginal prob 2^-B
  std::uint64_t block_span() const { return beta() + 2 * theta(); }
  bool valid(int L) const { return block_span() >= static_cast<std::uint64_t>(L); }
};

// Simulation-side truth: the gap record of an input sequence, extended on
// demand when the underlying bit source is a seeded stream (so a check can
// never run out of truth), fixed when built from a given sequence.
class GapTruth {
 public:
  static GapTruth from_bits(const BitSequence& x);
  static GapTruth from_iid(std::uint64_t seed);
  static GapTruth from_lfsr(const FeedbackPolynomial& poly, const LfsrState& init);

  // 1-based. Throws std::out_of_range when a fixed source is exhausted.
  std::uint32_t gap(std::size_t i);
  bool has_gap(std::size_t i);

  std::size_t available() const { return gaps_.size(); }
  const std::vector<std::uint32_t>& gaps() const { return gaps_; }
  const std::vector<std::uint8_t>& z_bits() const { return z_; }
  // 1-based Empty position H_i; H_0 = 0.
  std::size_t empty_position(std::size_t i) const;
  std::size_t bits_consumed() const { return consumed_; }

 private:
  bool extend();  // grow by at least one gap; false if the source is done

  std::function<std::optional<std::uint8_t>()> next_bit_;  // null when fixed
  const BitSequence* fixed_ = nullptr;
  std::size_t fixed_pos_ = 0;
  AbsgEncoder enc_;
  std::vector<std::uint32_t> gaps_;
  std::vector<std::uint8_t> z_;
  std::vector<std::size_t> empty_positions_;
  std::size_t consumed_ = 0;
  std::shared_ptr<IidBitStream> iid_;
  std::shared_ptr<std::pair<FeedbackPolynomial, LfsrState>> lfsr_src_;
};

// True iff the guessed gaps equal the true gaps elementwise.
// Throws std::out_of_range if the fixed truth does not cover the window.
bool oracle_check(const Guess& g, GapTruth& truth);
bool oracle_check(const Guess& g, std::span<const std::uint32_t> truth_gaps);

// The practical check: rebuild the input window from the observed output
// bits and the guessed gaps, load its last L bits as the LFSR state (the
// window ends on a block boundary, so the ABSG state there is Empty), clock
// the LFSR onward, run ABSG from Empty over the continuation, and compare
// the next `horizon` produced output bits against the observed ones.
// Throws std::invalid_argument when z is too short (message names the
// required length) or the guess spans fewer than L input bits.
bool lfsr_check(const Guess& g, std::span<const std::uint8_t> z,
                const FeedbackPolynomial& poly, std::size_t horizon);

struct AttackResult {
  bool success = false;
  std::uint64_t queries_used = 0;
  std::uint64_t budget = 0;
  std::optional<ReconstructedSegment> recovered;
  std::string strategy;
  std::uint64_t seed = 0;
};

// Restartable guess generator.
class GuessStream {
 public:
  virtual ~GuessStream() = default;
  virtual std::optional<Guess> next() = 0;
  virtual void reset() = 0;
};

// The attack loop: evaluate `check` on guesses in order; stop at the first
// accepted guess or after `budget` queries (or when the stream ends). On
// success the input window is rebuilt from the observed output bits, which
// are read at success time (checks may grow a lazily-extended record).
AttackResult run_qubar(GuessStream& guesses,
                       const std::function<bool(const Guess&)>& check,
                       std::uint64_t budget,
                       const std::function<std::span<const std::uint8_t>()>& z_observed);

inline AttackResult run_qubar(GuessStream& guesses,
                              const std::function<bool(const Guess&)>& check,
                              std::uint64_t budget, std::span<const std::uint8_t> z_fixed) {
  return run_qubar(guesses, check, budget, [z_fixed] { return z_fixed; });
}

// All length-(L/3) vectors with per-symbol surprisal within epsilon of
// 2 bits, start index 1, restricted to valid guesses; enumerated by beta
// ascending, lexicographic within each beta. For epsilon < 3/L this is
// exactly the beta = L/3 composition family. Requires L divisible by 3.
class TypicalGuessStream : public GuessStream {
 public:
  TypicalGuessStream(int L, double epsilon);
  std::optional<Guess> next() override;
  void reset() override;

 private:
  int L_, theta_;
  std::uint64_t beta_lo_, beta_hi_, beta_;
  std::optional<CompositionCursor> cur_;
  bool done_ = false;
};

// All-zero gap windows of length L/2 over non-overlapping output segments:
// guess k starts at output index (k-1)*L/2 + 1. Requires L even.
class MostProbableGuessStream : public GuessStream {
 public:
  MostProbableGuessStream(int L, std::uint64_t count);
  std::optional<Guess> next() override;
  void reset() override { k_ = 0; }

 private:
  int L_;
  std::uint64_t count_, k_ = 0;
};

// Classes in scan order (cost ascending), compositions lexicographic within
// each class, start index 1. With minimal_only (default) a vector whose
// proper prefix is itself valid is skipped, which makes the stream
// prefix-free with pairwise-disjoint success events. Requires L even.
class SortedGuessStream : public GuessStream {
 public:
  explicit SortedGuessStream(int L, bool minimal_only = true);
  std::optional<Guess> next() override;
  void reset() override;

 private:
  bool class_has_elements() const;

  int L_;
  bool minimal_only_;
  std::vector<GuessClass> classes_;
  std::size_t class_idx_ = 0;
  std::optional<CompositionCursor> cur_;
  bool done_ = false;
};

struct StrategySpec {
  enum class Kind { typical, most_probable, sorted };
  Kind kind = Kind::sorted;
  double epsilon = 0.1;     // typical
  bool minimal_only = true; // sorted
};

std::unique_ptr<GuessStream> make_guess_stream(const StrategySpec& spec, int L,
                                               std::uint64_t budget);

// Pairs (j, k), j < k, with equal start index where guess j's vector is a
// proper prefix of guess k's.
std::vector<std::pair<std::size_t, std::size_t>> validate_prefix_free(
    std::span<const Guess> guesses);

// Brute-force disjointness of success events for start-index-1 guess lists:
// enumerates every gap realization with block span up to 2*L_small and
// checks that none satisfies two distinct guesses. Refuses L_small > 14.
bool validate_disjoint_success(std::span<const Guess> guesses, int L_small);

// Brute-force Pr[at least one guess accepted] for start-index-1 guess
// lists, by exact enumeration over bounded-span realizations. Oracle for
// the disjoint-sum identity.
ExactProb brute_union_probability(std::span<const Guess> guesses);

}  // namespace absg
