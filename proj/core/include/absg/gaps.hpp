#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "absg/exact.hpp"

namespace absg {

// Gap law: Pr[Q = q] = (1/2)^{q+1}.
ExactProb gap_pmf(std::uint32_t q);

// Entropy of the gap law in bits.
constexpr double gap_entropy() { return 2.0; }

// Product of gap_pmf over the entries: 2^{-(theta + beta)}.
ExactProb guess_probability(std::span<const std::uint32_t> q);

inline std::uint64_t vector_beta(std::span<const std::uint32_t> q) {
  std::uint64_t b = 0;
  for (auto v : q) b += v;
  return b;
}

// Guess class descriptor (theta, alpha) at degree L: all length-theta gap
// vectors with sum beta = L - 2*theta + alpha. Every element has the same
// probability 2^-B with cost B = L - theta + alpha = theta + beta.
class GuessClass {
 public:
  GuessClass(int L, int theta, int alpha);

  int L() const { return L_; }
  int theta() const { return theta_; }
  int alpha() const { return alpha_; }
  int beta() const { return L_ - 2 * theta_ + alpha_; }
  int cost() const { return L_ - theta_ + alpha_; }  // B

  ExactProb element_prob() const { return ExactProb::pow2_neg(static_cast<unsigned long>(cost())); }

  // |G(theta, alpha)| = C(beta + theta - 1, theta - 1) = C(B - 1, theta - 1)
  Nat cardinality() const;

  // Number of elements with no valid proper prefix. A prefix of length
  // theta-1 is valid iff 2(theta-1) + (beta - q_theta) >= L, so minimality
  // is exactly q_theta >= alpha - 1:
  //   alpha <= 1 : the whole class
  //   alpha >= 2 : C(L - theta, theta - 1)  (compositions with last part
  //                >= alpha - 1, by shifting the last part)
  Nat minimal_cardinality() const;

  ExactProb mass() const { return element_prob().scaled(cardinality()); }
  ExactProb minimal_mass() const { return element_prob().scaled(minimal_cardinality()); }

  bool operator==(const GuessClass&) const = default;

 private:
  int L_, theta_, alpha_;
};

Nat class_cardinality(const GuessClass& c);

// Lexicographically ordered enumeration of all length-theta nonnegative
// vectors summing to beta. Usage:
//   CompositionCursor cur(theta, beta);
//   do { use(cur.value()); } while (cur.advance());
class CompositionCursor {
 public:
  CompositionCursor(int theta, std::uint64_t beta);

  const std::vector<std::uint32_t>& value() const { return q_; }
  bool advance();  // false once the last composition has been consumed
  void reset();

 private:
  int theta_;
  std::uint64_t beta_;
  std::vector<std::uint32_t> q_;
};

// Feasible classes in scan order: B ascending from L/2 to L-1, ties by
// alpha ascending from 0 to 2B-L, theta = L - B + alpha. Refuses odd L.
std::vector<GuessClass> sorted_classes(int L);

// Exact typicality test: beta/theta within [1 - eps, 1 + eps], i.e. the
// per-symbol surprisal within eps of 2 bits.
bool is_typical(std::span<const std::uint32_t> q, double epsilon);

// Exact mass sum |G| * 2^-B over full classes with cost in [Bmin, Bmax].
ExactProb mass_over_cost_range(int L, int Bmin, int Bmax);

// Exact mass of the first n_classes entries of sorted_classes(L).
ExactProb mass_of_class_prefix(int L, std::size_t n_classes);

// The two class-mass aggregates of the exhaustive-search accounting
// (L divisible by 6):
//   p1: full-class mass over L/2 <= B <= 2L/3 - 1
//   p2: full-class mass of classes (L/3 + a, a), a = 1..L/3  (cost 2L/3)
ExactProb p1_mass(int L);
ExactProb p2_mass(int L);

}  // namespace absg
