#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "icgame/channel.h"
#include "icgame/game.h"

namespace icgame {

struct LearningConfig {
  // Normalization constant; unset means 2 * n * max|U| of the game.
  std::optional<double> mu;
  std::size_t t_max = 100000;
  std::uint64_t seed = 1;
  // Trailing window for the empirical pmf. Unset: second half of the
  // run. Zero: full history.
  std::optional<std::size_t> window;
  // Per-user probability of playing ON at t = 1; unset means 0.5 each.
  std::vector<double> initial_p;
};

double DefaultMu(const UtilityTable& table);

// Regret bookkeeping for one user. Action 0 = silent, 1 = transmit.
struct RegretState {
  // cum_diff[a][b]: sum over periods in which a was played of
  // U(b, others) - U(a, others).
  std::array<std::array<double, 2>, 2> cum_diff{};
  std::array<std::uint64_t, 2> plays{};
  double current_p = 0.5;  // probability of ON for the coming period
  int last_action = -1;    // -1 before the first period

  std::uint64_t periods() const { return plays[0] + plays[1]; }
  double average_diff(int from, int to) const;
  double regret(int from, int to) const;  // max(average_diff, 0)
  double max_regret() const;
};

// Uniform draw in [0, 1) from the top 53 bits; identical on every platform.
double UniformDouble(std::mt19937_64& rng);

// One period of regret matching for all users. Each user first fixes its
// switching probability from its own history (mu * p_switch = regret toward
// the other action), then all users draw, then every accumulator is
// updated from the realized profile. Users with no history draw from
// `initial_p`. Throws kConfig when regret / mu exceeds 1.
ActionProfile Step(std::vector<RegretState>& states, const UtilityTable& table,
                   double mu, std::mt19937_64& rng,
                   std::span<const double> initial_p = {});

struct Trajectory {
  std::size_t users = 0;
  std::vector<std::uint32_t> profiles;  // per period
  std::vector<double> utilities;        // period-major, users wide
  std::vector<double> probabilities;    // P(ON) used for each draw

  std::size_t length() const { return profiles.size(); }
};

// p[k] = count of profile k in the last `window` periods / window.
// window == 0 uses the full history. Throws kInvalidInput for an empty
// trajectory or a window longer than the history.
JointDistribution EmpiricalDistribution(const Trajectory& trajectory,
                                        std::size_t window);

struct LearningResult {
  Trajectory trajectory;
  std::vector<RegretState> states;
  double mu = 0.0;
  std::size_t window = 0;
  JointDistribution empirical;
  CeVerdict ce;
  std::vector<double> avg_regret;  // per-user max over action pairs
};

LearningResult Run(const UtilityTable& table, const LearningConfig& config,
                   double ce_eps = 0.05);
LearningResult Run(const ChannelGains& gains, Mechanism mechanism,
                   const LearningConfig& config, double ce_eps = 0.05);

}  // namespace icgame
