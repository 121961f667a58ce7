#include "absg/reconstruct.hpp"

#include <stdexcept>

namespace absg {

BitSequence x_from_gaps(std::span<const std::uint8_t> z_segment,
                        std::span<const std::uint32_t> q_segment) {
  if (z_segment.size() != q_segment.size())
    throw std::invalid_argument("x_from_gaps: z and q windows must have equal length");
  BitSequence x;
  std::size_t total = 0;
  for (auto q : q_segment) total += q + 2;
  x.bits.reserve(total);
  for (std::size_t j = 0; j < q_segment.size(); ++j) {
    const std::uint8_t z = z_segment[j];
    const std::uint32_t q = q_segment[j];
    if (q == 0) {
      x.bits.push_back(z);
      x.bits.push_back(z);
    } else {
      x.bits.push_back(static_cast<std::uint8_t>(1 - z));
      for (std::uint32_t k = 0; k < q; ++k) x.bits.push_back(z);
      x.bits.push_back(static_cast<std::uint8_t>(1 - z));
    }
  }
  return x;
}

ScanOutcome gaps_from_x_window(const BitSequence& x, std::size_t n, Sym y_n,
                               std::size_t L_target) {
  if (L_target == 0) throw std::invalid_argument("gaps_from_x_window: target length must be positive");
  ScanOutcome out;
  const std::size_t budget = 64 * L_target * L_target;

  Sym s = y_n;
  std::size_t pos = n;                      // position of the symbol currently held
  std::optional<std::size_t> first_empty;   // h_start
  std::optional<std::size_t> last_empty;
  std::size_t empties_skipped = 0;          // Empty symbols seen before the window opens
  std::vector<std::uint32_t> q;

  if (s == Sym::Empty) first_empty = last_empty = pos;

  while (pos < x.size() && out.bits_examined < budget) {
    s = absg_step(s, x.bits[pos]);
    ++pos;
    ++out.bits_examined;
    if (s != Sym::Empty) continue;
    if (!first_empty) {
      first_empty = last_empty = pos;
      ++empties_skipped;
      continue;
    }
    q.push_back(static_cast<std::uint32_t>(pos - *last_empty - 2));
    last_empty = pos;
    if (pos - *first_empty >= L_target) {
      GapWindow w;
      w.h_start = *first_empty;
      w.q = std::move(q);
      // scanning from the head sees every block, so the output index of the
      // first window gap is known: one per Empty crossed before the window
      if (n == 0 && y_n == Sym::Empty) w.out_index = empties_skipped + 1;
      out.window = std::move(w);
      return out;
    }
  }
  return out;  // exhausted input or scan budget
}

std::vector<std::pair<Sym, GapWindow>> gaps_from_x_window_any(const BitSequence& x,
                                                              std::size_t n,
                                                              std::size_t L_target) {
  std::vector<std::pair<Sym, GapWindow>> out;
  for (Sym s : {Sym::Empty, Sym::Zero, Sym::One}) {
    auto r = gaps_from_x_window(x, n, s, L_target);
    if (r.ok()) out.emplace_back(s, std::move(*r.window));
  }
  return out;
}

}  // namespace absg
