#pragma once
// Literal conditional sum for the two-strain mutation model: probability that
// a node with z children ends up infected and carrying strain `strain`
// (0 or 1), when each child independently carries strain j with probability
// q[j]. Children of strain j transmit with probability Q[j]; a node receiving
// x strain-0 and y strain-1 transmissions takes strain 0 w.p. x/(x+y), then
// mutates via mu. Test-only.

#include <array>
#include <cmath>

namespace oracle {

inline double choose(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

inline double mutation_literal(int z, std::array<double, 2> q, std::array<double, 2> Q,
                               const std::array<std::array<double, 2>, 2>& mu, int strain) {
  double total = 0.0;
  const double idle = 1.0 - q[0] - q[1];
  // k0 children carry strain 0, k1 carry strain 1, the rest are uninfected.
  for (int k0 = 0; k0 <= z; ++k0) {
    for (int k1 = 0; k0 + k1 <= z; ++k1) {
      const double pk = choose(z, k0) * choose(z - k0, k1) * std::pow(q[0], k0) * std::pow(q[1], k1) *
                        std::pow(idle, z - k0 - k1);
      for (int x = 0; x <= k0; ++x) {
        const double px = choose(k0, x) * std::pow(Q[0], x) * std::pow(1.0 - Q[0], k0 - x);
        for (int y = 0; y <= k1; ++y) {
          if (x + y == 0) continue;
          const double py = choose(k1, y) * std::pow(Q[1], y) * std::pow(1.0 - Q[1], k1 - y);
          const double received0 = static_cast<double>(x) / (x + y);
          const double carried = received0 * mu[0][strain] + (1.0 - received0) * mu[1][strain];
          total += pk * px * py * carried;
        }
      }
    }
  }
  return total;
}

}  // namespace oracle
