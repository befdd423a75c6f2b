#include "icgame/channel.h"

#include <cmath>
#include <string>

#include "icgame/error.h"

namespace icgame {

ChannelGains::ChannelGains(std::vector<std::vector<double>> rows, double p_max)
    : n_(rows.size()), p_max_(p_max) {
  if (n_ < 2) {
    throw Error(ErrorKind::kInvalidInput, "channel needs at least two users");
  }
  if (!(p_max > 0.0) || !std::isfinite(p_max)) {
    throw Error(ErrorKind::kInvalidInput, "p_max must be positive and finite");
  }
  g_.reserve(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (rows[i].size() != n_) {
      throw Error(ErrorKind::kInvalidInput, "gain matrix must be square");
    }
    for (std::size_t j = 0; j < n_; ++j) {
      const double g = rows[i][j];
      if (!(g >= 0.0) || !std::isfinite(g)) {
        throw Error(ErrorKind::kInvalidInput,
                    "gain(" + std::to_string(i) + "," + std::to_string(j) +
                        ") must be finite and nonnegative");
      }
      if (i == j && g == 0.0) {
        throw Error(ErrorKind::kInvalidInput,
                    "direct gain of user " + std::to_string(i + 1) +
                        " must be positive");
      }
      g_.push_back(g);
    }
  }
}

ChannelGains ChannelGains::TwoUser(double a, double b, double c, double d,
                                   double p_max) {
  return ChannelGains({{a, d}, {b, c}}, p_max);
}

RatePoint Rates(const ChannelGains& gains, const PowerVector& powers) {
  const std::size_t n = gains.users();
  if (powers.p.size() != n) {
    throw Error(ErrorKind::kInvalidInput, "power vector length mismatch");
  }
  for (double p : powers.p) {
    if (!(p >= 0.0 && p <= gains.p_max())) {
      throw Error(ErrorKind::kInvalidInput, "power outside [0, p_max]");
    }
  }
  RatePoint out{std::vector<double>(n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    if (powers.p[i] == 0.0) continue;
    double interference = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) interference += gains.gain(j, i) * powers.p[j];
    }
    out.r[i] = std::log2(1.0 + gains.gain(i, i) * powers.p[i] / interference);
  }
  return out;
}

RatePoint RatesForProfile(const ChannelGains& gains,
                          const ActionProfile& profile) {
  if (profile.users() != gains.users()) {
    throw Error(ErrorKind::kInvalidInput, "profile length mismatch");
  }
  PowerVector powers{std::vector<double>(gains.users(), 0.0)};
  for (std::size_t i = 0; i < gains.users(); ++i) {
    if (profile.on(i)) powers.p[i] = gains.p_max();
  }
  return Rates(gains, powers);
}

}  // namespace icgame
