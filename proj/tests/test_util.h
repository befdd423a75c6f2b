#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "icgame/channel.h"

namespace icgame::testing {

// Gains drawn log-uniformly in [lo, hi].
inline ChannelGains RandomGains(std::mt19937_64& rng, std::size_t n,
                                double lo = 0.01, double hi = 100.0) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  std::vector<std::vector<double>> g(n, std::vector<double>(n));
  for (auto& row : g) {
    for (double& v : row) v = std::exp(u(rng));
  }
  return ChannelGains(g, 1.0);
}

}  // namespace icgame::testing
