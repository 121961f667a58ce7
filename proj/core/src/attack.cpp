#include "absg/attack.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace absg {

GapTruth GapTruth::from_bits(const BitSequence& x) {
  GapTruth t;
  t.fixed_ = &x;
  return t;
}

GapTruth GapTruth::from_iid(std::uint64_t seed) {
  GapTruth t;
  t.iid_ = std::make_shared<IidBitStream>(seed);
  auto src = t.iid_;
  t.next_bit_ = [src]() -> std::optional<std::uint8_t> { return src->next(); };
  return t;
}

GapTruth GapTruth::from_lfsr(const FeedbackPolynomial& poly, const LfsrState& init) {
  if (init.reg.size() != static_cast<std::size_t>(poly.degree()))
    throw std::invalid_argument("GapTruth::from_lfsr: state length must equal polynomial degree");
  GapTruth t;
  t.lfsr_src_ = std::make_shared<std::pair<FeedbackPolynomial, LfsrState>>(poly, init);
  auto src = t.lfsr_src_;
  auto head = std::make_shared<std::size_t>(0);
  t.next_bit_ = [src, head]() -> std::optional<std::uint8_t> {
    auto& [p, s] = *src;
    const std::size_t L = s.reg.size();
    std::uint8_t out = s.reg[*head];
    std::uint8_t f = 0;
    for (int tap : p.taps()) f ^= s.reg[(*head + L - static_cast<std::size_t>(tap)) % L];
    s.reg[*head] = f;
    *head = (*head + 1) % L;
    return out;
  };
  return t;
}

bool GapTruth::extend() {
  for (;;) {
    std::optional<std::uint8_t> b;
    if (fixed_) {
      if (fixed_pos_ >= fixed_->size()) return false;
      b = fixed_->bits[fixed_pos_++];
    } else {
      b = next_bit_();
      if (!b) return false;
    }
    ++consumed_;
    if (auto e = enc_.push(*b)) {
      gaps_.push_back(e->gap);
      z_.push_back(e->z);
      empty_positions_.push_back(e->empty_pos);
      return true;
    }
  }
}

bool GapTruth::has_gap(std::size_t i) {
  if (i == 0) return false;
  while (gaps_.size() < i) {
    if (!extend()) return false;
  }
  return true;
}

std::uint32_t GapTruth::gap(std::size_t i) {
  if (!has_gap(i))
    throw std::out_of_range("GapTruth: truth record has " + std::to_string(gaps_.size()) +
                            " gaps, index " + std::to_string(i) + " requested");
  return gaps_[i - 1];
}

std::size_t GapTruth::empty_position(std::size_t i) const {
  if (i == 0) return 0;
  if (i > empty_positions_.size()) throw std::out_of_range("GapTruth: empty position index");
  return empty_positions_[i - 1];
}

bool oracle_check(const Guess& g, GapTruth& truth) {
  for (std::size_t j = 0; j < g.theta(); ++j) {
    std::size_t idx = g.start + j;
    if (!truth.has_gap(idx))
      throw std::out_of_range("oracle_check: truth record too short for guess window ending at " +
                              std::to_string(g.start + g.theta() - 1));
    if (truth.gaps()[idx - 1] != g.q[j]) return false;
  }
  return true;
}

bool oracle_check(const Guess& g, std::span<const std::uint32_t> truth_gaps) {
  if (g.start + g.theta() - 1 > truth_gaps.size())
    throw std::out_of_range("oracle_check: truth record too short for guess window ending at " +
                            std::to_string(g.start + g.theta() - 1));
  for (std::size_t j = 0; j < g.theta(); ++j)
    if (truth_gaps[g.start - 1 + j] != g.q[j]) return false;
  return true;
}

bool lfsr_check(const Guess& g, std::span<const std::uint8_t> z,
                const FeedbackPolynomial& poly, std::size_t horizon) {
  const auto L = static_cast<std::size_t>(poly.degree());
  const std::size_t need = g.start - 1 + g.theta() + horizon;
  if (z.size() < need)
    throw std::invalid_argument("lfsr_check: needs " + std::to_string(need) +
                                " observed output bits, got " + std::to_string(z.size()));
  if (g.block_span() < L)
    throw std::invalid_argument("lfsr_check: guess spans fewer than L input bits");

  BitSequence window = x_from_gaps(z.subspan(g.start - 1, g.theta()), g.q);
  std::span<const std::uint8_t> tail(window.bits.data() + (window.size() - L), L);

  // Clock the LFSR past the window and feed the continuation through the
  // cipher from state Empty; a correct guess lands on a block boundary, so
  // the produced bits must equal the observed continuation.
  AbsgEncoder enc;
  std::vector<std::uint8_t> reg(tail.begin(), tail.end());
  std::size_t head = 0;
  std::size_t produced = 0;
  const std::size_t input_cap = 40 * horizon + 64 * L + 1024;
  for (std::size_t fed = 0; produced < horizon; ++fed) {
    if (fed >= input_cap) return false;  // implausibly long block, cannot match
    std::uint8_t f = 0;
    for (int tap : poly.taps()) f ^= reg[(head + L - static_cast<std::size_t>(tap)) % L];
    reg[head] = f;
    head = (head + 1) % L;
    if (auto e = enc.push(f)) {
      if (e->z != z[g.start - 1 + g.theta() + produced]) return false;
      ++produced;
    }
  }
  return true;
}

AttackResult run_qubar(GuessStream& guesses,
                       const std::function<bool(const Guess&)>& check,
                       std::uint64_t budget,
                       const std::function<std::span<const std::uint8_t>()>& z_observed) {
  AttackResult r;
  r.budget = budget;
  while (r.queries_used < budget) {
    auto g = guesses.next();
    if (!g) break;
    ++r.queries_used;
    if (check(*g)) {
      r.success = true;
      std::span<const std::uint8_t> z = z_observed();
      if (z.size() >= g->start - 1 + g->theta()) {
        ReconstructedSegment seg;
        seg.bits = x_from_gaps(z.subspan(g->start - 1, g->theta()), g->q);
        r.recovered = std::move(seg);
      }
      break;
    }
  }
  return r;
}

TypicalGuessStream::TypicalGuessStream(int L, double epsilon) : L_(L), theta_(L / 3) {
  if (L < 3 || L % 3 != 0)
    throw std::invalid_argument("typical guesses: L must be divisible by 3");
  if (!(epsilon > 0)) throw std::invalid_argument("typical guesses: epsilon must be positive");
  // typicality gives beta within eps*theta of theta; Def-4 validity trims
  // the lower side to beta >= L - 2*theta = theta
  beta_lo_ = static_cast<std::uint64_t>(theta_);
  beta_hi_ = static_cast<std::uint64_t>(theta_) +
             static_cast<std::uint64_t>(std::floor(static_cast<long double>(epsilon) * theta_));
  reset();
}

void TypicalGuessStream::reset() {
  beta_ = beta_lo_;
  cur_.emplace(theta_, beta_);
  done_ = false;
}

std::optional<Guess> TypicalGuessStream::next() {
  if (done_) return std::nullopt;
  Guess g{1, cur_->value()};
  if (!cur_->advance()) {
    if (beta_ < beta_hi_) {
      ++beta_;
      cur_.emplace(theta_, beta_);
    } else {
      done_ = true;
    }
  }
  return g;
}

MostProbableGuessStream::MostProbableGuessStream(int L, std::uint64_t count)
    : L_(L), count_(count) {
  if (L < 2 || L % 2 != 0)
    throw std::invalid_argument("most-probable guesses: L must be even");
}

std::optional<Guess> MostProbableGuessStream::next() {
  if (k_ >= count_) return std::nullopt;
  const auto half = static_cast<std::size_t>(L_ / 2);
  Guess g;
  g.start = k_ * half + 1;
  g.q.assign(half, 0);
  ++k_;
  return g;
}

SortedGuessStream::SortedGuessStream(int L, bool minimal_only)
    : L_(L), minimal_only_(minimal_only), classes_(sorted_classes(L)) {
  reset();
}

bool SortedGuessStream::class_has_elements() const {
  const GuessClass& c = classes_[class_idx_];
  return !minimal_only_ || c.minimal_cardinality() > 0;
}

void SortedGuessStream::reset() {
  class_idx_ = 0;
  done_ = false;
  while (class_idx_ < classes_.size() && !class_has_elements()) ++class_idx_;
  if (class_idx_ >= classes_.size()) {
    done_ = true;
    return;
  }
  cur_.emplace(classes_[class_idx_].theta(),
               static_cast<std::uint64_t>(classes_[class_idx_].beta()));
}

std::optional<Guess> SortedGuessStream::next() {
  while (!done_) {
    const GuessClass& c = classes_[class_idx_];
    // minimal <=> the length-(theta-1) prefix is invalid <=> last part >= alpha-1
    bool keep = !minimal_only_ || c.alpha() <= 1 ||
                cur_->value().back() >= static_cast<std::uint32_t>(c.alpha() - 1);
    std::optional<Guess> g;
    if (keep) g = Guess{1, cur_->value()};
    if (!cur_->advance()) {
      ++class_idx_;
      while (class_idx_ < classes_.size() && !class_has_elements()) ++class_idx_;
      if (class_idx_ >= classes_.size()) {
        done_ = true;
      } else {
        cur_.emplace(classes_[class_idx_].theta(),
                     static_cast<std::uint64_t>(classes_[class_idx_].beta()));
      }
    }
    if (g) return g;
  }
  return std::nullopt;
}

std::unique_ptr<GuessStream> make_guess_stream(const StrategySpec& spec, int L,
                                               std::uint64_t budget) {
  switch (spec.kind) {
    case StrategySpec::Kind::typical:
      return std::make_unique<TypicalGuessStream>(L, spec.epsilon);
    case StrategySpec::Kind::most_probable:
      return std::make_unique<MostProbableGuessStream>(L, budget);
    case StrategySpec::Kind::sorted:
      return std::make_unique<SortedGuessStream>(L, spec.minimal_only);
  }
  throw std::invalid_argument("make_guess_stream: unknown strategy");
}

std::vector<std::pair<std::size_t, std::size_t>> validate_prefix_free(
    std::span<const Guess> guesses) {
  std::vector<std::pair<std::size_t, std::size_t>> violations;
  for (std::size_t j = 0; j < guesses.size(); ++j) {
    for (std::size_t k = j + 1; k < guesses.size(); ++k) {
      const Guess& a = guesses[j];
      const Guess& b = guesses[k];
      if (a.start != b.start || a.theta() >= b.theta()) continue;
      if (std::equal(a.q.begin(), a.q.end(), b.q.begin())) violations.emplace_back(j, k);
    }
  }
  return violations;
}

namespace {

struct GuessIndex {
  // guesses keyed by theta; duplicate vectors keep their multiplicity
  std::map<std::size_t, std::map<std::vector<std::uint32_t>, std::size_t>> by_theta;
  std::size_t max_theta = 0;
  std::uint64_t max_span = 0;

  explicit GuessIndex(std::span<const Guess> guesses) {
    for (const Guess& g : guesses) {
      if (g.start != 1)
        throw std::invalid_argument("realization enumeration requires start index 1");
      ++by_theta[g.theta()][g.q];
      max_theta = std::max(max_theta, g.theta());
      max_span = std::max(max_span, g.block_span());
    }
  }

  std::size_t matches(const std::vector<std::uint32_t>& path) const {
    auto it = by_theta.find(path.size());
    if (it == by_theta.end()) return 0;
    auto jt = it->second.find(path);
    return jt == it->second.end() ? 0 : jt->second;
  }
};

// Walk every gap realization with block span below `cap`, branching on the
// next gap value. `visit` is called on each prefix; returning false prunes
// the subtree.
void walk_realizations(std::uint64_t cap, std::vector<std::uint32_t>& path,
                       std::uint64_t span, std::size_t max_depth,
                       const std::function<bool(const std::vector<std::uint32_t>&)>& visit) {
  if (path.size() >= max_depth || span + 2 > cap) return;
  for (std::uint64_t q = 0; span + q + 2 <= cap; ++q) {
    path.push_back(static_cast<std::uint32_t>(q));
    if (visit(path)) walk_realizations(cap, path, span + q + 2, max_depth, visit);
    path.pop_back();
  }
}

}  // namespace

bool validate_disjoint_success(std::span<const Guess> guesses, int L_small) {
  if (L_small > 14)
    throw std::invalid_argument("validate_disjoint_success: brute force is capped at L <= 14");
  GuessIndex index(guesses);
  const std::uint64_t cap = 2 * static_cast<std::uint64_t>(L_small);
  if (index.max_span > cap)
    throw std::invalid_argument("validate_disjoint_success: a guess spans more than 2L input bits");

  bool disjoint = true;
  std::vector<std::uint32_t> path;
  walk_realizations(cap + 1, path, 0, index.max_theta,
                    [&](const std::vector<std::uint32_t>& p) {
                      if (!disjoint) return false;
                      std::size_t m = index.matches(p);
                      if (m >= 2) {
                        disjoint = false;  // one realization satisfies two guesses
                        return false;
                      }
                      if (m == 1) {
                        // any longer guess matching an extension of p is also
                        // satisfied together with this one
                        bool second = false;
                        std::vector<std::uint32_t> ext = p;
                        walk_realizations(cap + 1, ext, vector_beta(p) + 2 * p.size(),
                                          index.max_theta,
                                          [&](const std::vector<std::uint32_t>& e) {
                                            if (index.matches(e) > 0) second = true;
                                            return !second;
                                          });
                        if (second) disjoint = false;
                        return false;
                      }
                      return true;
                    });
  return disjoint;
}

ExactProb brute_union_probability(std::span<const Guess> guesses) {
  GuessIndex index(guesses);
  // beyond every guess's span no new match can occur, so realizations are
  // cut at max_span + 1 and matched prefixes absorb their whole subtree
  ExactProb acc;
  std::vector<std::uint32_t> path;
  walk_realizations(index.max_span + 1, path, 0, index.max_theta,
                    [&](const std::vector<std::uint32_t>& p) {
                      if (index.matches(p) > 0) {
                        acc += guess_probability(p);
                        return false;  // whole cylinder succeeds
                      }
                      return true;
                    });
  return acc;
}

}  // namespace absg
