#pragma once

// CHSH over deterministic local strategies: each party fixes an output
// +-1 for each of its two inputs, 16 strategies in total.

#include <algorithm>
#include <array>

namespace oracle {

inline int chsh_of_strategy(int bits) {
  const std::array<int, 2> a{bits & 1 ? 1 : -1, bits & 2 ? 1 : -1};
  const std::array<int, 2> b{bits & 4 ? 1 : -1, bits & 8 ? 1 : -1};
  return a[0] * b[0] + a[0] * b[1] + a[1] * b[0] - a[1] * b[1];
}

inline int deterministic_chsh_max() {
  int best = -4;
  for (int s = 0; s < 16; ++s) best = std::max(best, chsh_of_strategy(s));
  return best;
}

}  // namespace oracle
