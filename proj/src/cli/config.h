#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "icgame/channel.h"
#include "icgame/game.h"
#include "icgame/learning.h"

namespace icgame::cli {

// Interference sweep in dB (power ratio, linear = 10^(dB/10)).
// parameter "interference" sets b = d and needs a symmetric base channel;
// "b" or "d" sweeps that gain alone.
struct SweepSpec {
  std::string parameter = "interference";
  double db_min = -20.0;
  double db_max = 20.0;
  std::size_t steps = 41;

  std::vector<double> points_db() const;
};

struct ExperimentConfig {
  std::optional<ChannelGains> gains;
  Mechanism mechanism = Mechanism::kVcg;

  std::optional<double> mu;
  std::size_t t_max = 100000;
  std::vector<std::uint64_t> seeds{1};
  std::optional<std::size_t> window;
  std::vector<double> initial_p;

  SweepSpec sweep;

  std::filesystem::path out_dir = ".";
  bool write_trajectories = true;

  std::size_t area_grid = 1024;
  std::size_t frontier_grid = 65;
  std::optional<bool> frontiers;

  double ce_eps = 1e-9;
  double learning_ce_eps = 0.05;

  const ChannelGains& require_gains() const;
  LearningConfig learning(std::uint64_t seed) const;
};

inline double DbToLinear(double db) { return std::pow(10.0, db / 10.0); }

// Throws Error(kConfig) on malformed text, unknown keys or bad values.
ExperimentConfig ParseConfig(const std::string& json_text);
ExperimentConfig LoadConfig(const std::filesystem::path& path);

std::vector<std::uint64_t> ParseSeedList(const std::string& text);

// Whitespace/comma separated numbers; '#' starts a comment.
std::vector<double> ParsePmfText(const std::string& text);

}  // namespace icgame::cli
