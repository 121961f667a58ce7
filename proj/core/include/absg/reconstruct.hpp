#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "absg/bits.hpp"
#include "absg/cipher.hpp"

namespace absg {

// Input-bit window recovered from an output/gap window. `start` is the
// 0-based offset of the window within x when the caller knows it
// (simulation); absent otherwise.
struct ReconstructedSegment {
  BitSequence bits;
  std::optional<std::size_t> start;
};

// Deterministic gaps-to-input reduction. Per-gap blocks:
//   q == 0 : { z, z }
//   q  > 0 : { ~z, z^q, ~z }
// concatenated in order; total length sum(q_j + 2). Re-encoding the result
// from state Empty reproduces (z_segment, q_segment) exactly.
// Throws std::invalid_argument on length mismatch.
BitSequence x_from_gaps(std::span<const std::uint8_t> z_segment,
                        std::span<const std::uint32_t> q_segment);

// A gap window located inside an input sequence. The window's blocks span
// input positions h_start+1 .. h_start+span (1-based); out_index is the
// 1-based output index of the first gap when the scan started from the
// stream head (offset 0), where every preceding block is seen.
struct GapWindow {
  std::size_t h_start = 0;
  std::vector<std::uint32_t> q;
  std::optional<std::size_t> out_index;

  std::size_t span() const {
    std::size_t s = 0;
    for (auto g : q) s += g + 2;
    return s;
  }
};

struct ScanOutcome {
  std::optional<GapWindow> window;
  std::size_t bits_examined = 0;

  bool ok() const { return window.has_value(); }
};

// Scan-based input-window-to-gaps reduction: runs the state machine forward
// from (offset n, known symbol y_n), locates the first Empty at or after n,
// then keeps scanning until an Empty whose block span covers at least
// L_target input bits (extending past n + L_target while the boundary
// symbol is not Empty). Fails, with a bits-examined diagnostic, if x runs
// out or the polynomial scan budget of 64 * L_target^2 examined positions
// is exhausted before two suitable Empty symbols are found.
ScanOutcome gaps_from_x_window(const BitSequence& x, std::size_t n, Sym y_n,
                               std::size_t L_target);

// The known-symbol requirement dropped: tries all three symbols for y_n and
// returns every consistent scan result.
std::vector<std::pair<Sym, GapWindow>> gaps_from_x_window_any(const BitSequence& x,
                                                              std::size_t n,
                                                              std::size_t L_target);

}  // namespace absg
