#include "absg/gaps.hpp"

#include <stdexcept>

namespace absg {

ExactProb gap_pmf(std::uint32_t q) {
  return ExactProb::pow2_neg(static_cast<unsigned long>(q) + 1);
}

ExactProb guess_probability(std::span<const std::uint32_t> q) {
  std::uint64_t cost = q.size() + vector_beta(q);  // theta + beta
  return ExactProb::pow2_neg(static_cast<unsigned long>(cost));
}

GuessClass::GuessClass(int L, int theta, int alpha) : L_(L), theta_(theta), alpha_(alpha) {
  if (L < 2) throw std::invalid_argument("guess class: L must be >= 2");
  if (theta < 1) throw std::invalid_argument("guess class: theta must be >= 1");
  if (alpha < 0) throw std::invalid_argument("guess class: alpha must be >= 0");
  if (beta() < 0) throw std::invalid_argument("guess class: beta = L - 2*theta + alpha is negative");
  // beta >= 0 already forces cost >= L/2; the scan's feasible set also
  // caps the cost below L
  if (cost() > L - 1)
    throw std::invalid_argument("guess class: cost B = L - theta + alpha exceeds L - 1");
}

Nat GuessClass::cardinality() const {
  return binomial(static_cast<unsigned long>(beta() + theta_ - 1),
                  static_cast<unsigned long>(theta_ - 1));
}

Nat GuessClass::minimal_cardinality() const {
  if (alpha_ <= 1) return cardinality();
  int rem = beta() - (alpha_ - 1);
  if (rem < 0) return 0;
  return binomial(static_cast<unsigned long>(rem + theta_ - 1),
                  static_cast<unsigned long>(theta_ - 1));
}

Nat class_cardinality(const GuessClass& c) { return c.cardinality(); }

CompositionCursor::CompositionCursor(int theta, std::uint64_t beta)
    : theta_(theta), beta_(beta) {
  if (theta < 1) throw std::invalid_argument("compositions: theta must be >= 1");
  reset();
}

void CompositionCursor::reset() {
  q_.assign(static_cast<std::size_t>(theta_), 0);
  q_.back() = static_cast<std::uint32_t>(beta_);
}

bool CompositionCursor::advance() {
  // lexicographic successor: bump the rightmost position that has mass
  // strictly to its right, then push the leftover to the tail
  if (theta_ == 1) return false;
  std::uint64_t right = q_.back();
  for (int j = theta_ - 2; j >= 0; --j) {
    if (right > 0) {
      ++q_[static_cast<std::size_t>(j)];
      for (std::size_t k = static_cast<std::size_t>(j) + 1; k + 1 < q_.size(); ++k) q_[k] = 0;
      q_.back() = static_cast<std::uint32_t>(right - 1);
      return true;
    }
    right += q_[static_cast<std::size_t>(j)];
  }
  return false;
}

std::vector<GuessClass> sorted_classes(int L) {
  if (L < 2 || L % 2 != 0)
    throw std::invalid_argument("sorted_classes: L must be even (cost range starts at L/2)");
  std::vector<GuessClass> out;
  for (int B = L / 2; B <= L - 1; ++B)
    for (int alpha = 0; alpha <= 2 * B - L; ++alpha)
      out.emplace_back(L, L - B + alpha, alpha);
  return out;
}

bool is_typical(std::span<const std::uint32_t> q, double epsilon) {
  if (q.empty()) throw std::invalid_argument("is_typical: theta must be >= 1");
  if (!(epsilon > 0)) throw std::invalid_argument("is_typical: epsilon must be positive");
  const auto theta = static_cast<long double>(q.size());
  const auto beta = static_cast<long double>(vector_beta(q));
  const long double dev = beta > theta ? beta - theta : theta - beta;
  return dev <= static_cast<long double>(epsilon) * theta;
}

ExactProb mass_over_cost_range(int L, int Bmin, int Bmax) {
  if (Bmin < (L + 1) / 2 || Bmax > L - 1 || Bmin > Bmax)
    throw std::invalid_argument("mass_over_cost_range: cost range must lie within [L/2, L-1]");
  ExactProb sum;
  for (int B = Bmin; B <= Bmax; ++B)
    for (int alpha = 0; alpha <= 2 * B - L; ++alpha)
      sum += GuessClass(L, L - B + alpha, alpha).mass();
  return sum;
}

ExactProb mass_of_class_prefix(int L, std::size_t n_classes) {
  auto classes = sorted_classes(L);
  if (n_classes > classes.size())
    throw std::invalid_argument("mass_of_class_prefix: prefix longer than the class stream");
  ExactProb sum;
  for (std::size_t i = 0; i < n_classes; ++i) sum += classes[i].mass();
  return sum;
}

namespace {

void require_div6(int L, const char* what) {
  if (L < 6 || L % 6 != 0)
    throw std::invalid_argument(std::string(what) + ": L must be divisible by 6");
}

}  // namespace

ExactProb p1_mass(int L) {
  require_div6(L, "p1_mass");
  return mass_over_cost_range(L, L / 2, 2 * L / 3 - 1);
}

ExactProb p2_mass(int L) {
  require_div6(L, "p2_mass");
  ExactProb sum;
  for (int alpha = 1; alpha <= L / 3; ++alpha)
    sum += GuessClass(L, L / 3 + alpha, alpha).mass();
  return sum;
}

}  // namespace absg
