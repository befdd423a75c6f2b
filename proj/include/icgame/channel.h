#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "icgame/profile.h"

namespace icgame {

// Noise-normalized power gains of an n-user interference channel.
// gain(i, j) is the gain from transmitter i to receiver j, already divided
// by the receiver noise variance. In two-user notation a = gain(0,0),
// b = gain(1,0), c = gain(1,1), d = gain(0,1).
class ChannelGains {
 public:
  // `rows` is n x n, row i = transmitter i. Throws kInvalidInput on a
  // non-square matrix, n < 2, a negative entry, a zero diagonal or
  // p_max <= 0.
  ChannelGains(std::vector<std::vector<double>> rows, double p_max);

  static ChannelGains TwoUser(double a, double b, double c, double d,
                              double p_max = 1.0);

  std::size_t users() const { return n_; }
  double p_max() const { return p_max_; }
  double gain(std::size_t tx, std::size_t rx) const {
    return g_[tx * n_ + rx];
  }

 private:
  std::size_t n_;
  std::vector<double> g_;
  double p_max_;
};

struct PowerVector {
  std::vector<double> p;
};

// Per-user rates in bits per channel use.
struct RatePoint {
  std::vector<double> r;

  double operator[](std::size_t i) const { return r[i]; }
  std::size_t size() const { return r.size(); }
};

// R_i = log2(1 + g_ii p_i / (1 + sum_{j != i} g_ji p_j)).
RatePoint Rates(const ChannelGains& gains, const PowerVector& powers);

// Binary power control: user i transmits at p_max when its bit is set.
RatePoint RatesForProfile(const ChannelGains& gains,
                          const ActionProfile& profile);

}  // namespace icgame
