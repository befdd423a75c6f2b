#include "icgame/learning.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "icgame/error.h"

namespace icgame {
namespace {

// Allowance for rounding when regret sits exactly at mu.
constexpr double kProbabilitySlack = 1e-12;

void ValidateConfig(const LearningConfig& config, std::size_t users) {
  if (config.mu && !(*config.mu > 0.0)) {
    throw Error(ErrorKind::kConfig, "mu must be positive");
  }
  if (config.t_max < 1) {
    throw Error(ErrorKind::kConfig, "t_max must be at least 1");
  }
  if (config.window && *config.window > config.t_max) {
    throw Error(ErrorKind::kConfig, "window exceeds t_max");
  }
  if (!config.initial_p.empty() && config.initial_p.size() != users) {
    throw Error(ErrorKind::kConfig, "initial_p needs one entry per user");
  }
  for (double p : config.initial_p) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorKind::kConfig, "initial_p entries must lie in [0, 1]");
    }
  }
}

}  // namespace

double DefaultMu(const UtilityTable& table) {
  return 2.0 * static_cast<double>(table.users()) * table.max_abs();
}

double RegretState::average_diff(int from, int to) const {
  const std::uint64_t t = periods();
  return t == 0 ? 0.0 : cum_diff[from][to] / static_cast<double>(t);
}

double RegretState::regret(int from, int to) const {
  return std::max(average_diff(from, to), 0.0);
}

double RegretState::max_regret() const {
  return std::max(regret(0, 1), regret(1, 0));
}

double UniformDouble(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

ActionProfile Step(std::vector<RegretState>& states, const UtilityTable& table,
                   double mu, std::mt19937_64& rng,
                   std::span<const double> initial_p) {
  const std::size_t n = table.users();
  if (states.size() != n) {
    throw Error(ErrorKind::kInvalidInput, "one regret state per user");
  }

  for (std::size_t i = 0; i < n; ++i) {
    RegretState& s = states[i];
    if (s.last_action < 0) {
      s.current_p = initial_p.empty() ? 0.5 : initial_p[i];
      continue;
    }
    const int last = s.last_action;
    double p_switch = s.regret(last, 1 - last) / mu;
    if (p_switch > 1.0 + kProbabilitySlack) {
      throw Error(ErrorKind::kConfig,
                  "switch probability " + std::to_string(p_switch) +
                      " exceeds 1 for user " + std::to_string(i + 1) +
                      "; increase mu");
    }
    p_switch = std::min(p_switch, 1.0);
    s.current_p = last == 1 ? 1.0 - p_switch : p_switch;
  }

  // All draws use period-t probabilities before any accumulator moves.
  std::uint32_t index = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (UniformDouble(rng) < states[i].current_p) index |= 1u << i;
  }
  const ActionProfile profile(n, index);

  for (std::size_t i = 0; i < n; ++i) {
    RegretState& s = states[i];
    const int played = profile.on(i) ? 1 : 0;
    const std::uint32_t other = profile.with(i, played == 0).index();
    s.cum_diff[played][1 - played] +=
        table.utility(other, i) - table.utility(index, i);
    ++s.plays[played];
    s.last_action = played;
  }
  return profile;
}

JointDistribution EmpiricalDistribution(const Trajectory& trajectory,
                                        std::size_t window) {
  const std::size_t len = trajectory.length();
  if (len == 0) {
    throw Error(ErrorKind::kInvalidInput, "empty trajectory");
  }
  if (window > len) {
    throw Error(ErrorKind::kInvalidInput, "window longer than trajectory");
  }
  const std::size_t w = window == 0 ? len : window;
  std::vector<std::uint64_t> counts(ProfileCount(trajectory.users), 0);
  for (std::size_t t = len - w; t < len; ++t) ++counts[trajectory.profiles[t]];
  JointDistribution d{std::vector<double>(counts.size())};
  for (std::size_t k = 0; k < counts.size(); ++k) {
    d.p[k] = static_cast<double>(counts[k]) / static_cast<double>(w);
  }
  return d;
}

LearningResult Run(const UtilityTable& table, const LearningConfig& config,
                   double ce_eps) {
  const std::size_t n = table.users();
  ValidateConfig(config, n);

  LearningResult result;
  result.mu = config.mu ? *config.mu : DefaultMu(table);
  if (!(result.mu > 0.0)) {
    throw Error(ErrorKind::kConfig, "game has no utility spread; set mu");
  }
  result.window =
      config.window ? *config.window : config.t_max - config.t_max / 2;

  Trajectory& traj = result.trajectory;
  traj.users = n;
  traj.profiles.reserve(config.t_max);
  traj.utilities.reserve(config.t_max * n);
  traj.probabilities.reserve(config.t_max * n);

  result.states.assign(n, RegretState{});
  std::mt19937_64 rng(config.seed);
  for (std::size_t t = 0; t < config.t_max; ++t) {
    const ActionProfile profile =
        Step(result.states, table, result.mu, rng, config.initial_p);
    traj.profiles.push_back(profile.index());
    for (std::size_t i = 0; i < n; ++i) {
      traj.utilities.push_back(table.utility(profile.index(), i));
      traj.probabilities.push_back(result.states[i].current_p);
    }
  }

  result.empirical = EmpiricalDistribution(traj, result.window);
  result.ce = IsCorrelatedEquilibrium(table, result.empirical, ce_eps);
  result.avg_regret.reserve(n);
  for (const RegretState& s : result.states) {
    result.avg_regret.push_back(s.max_regret());
  }
  return result;
}

LearningResult Run(const ChannelGains& gains, Mechanism mechanism,
                   const LearningConfig& config, double ce_eps) {
  return Run(BuildUtilityTable(gains, mechanism), config, ce_eps);
}

}  // namespace icgame
