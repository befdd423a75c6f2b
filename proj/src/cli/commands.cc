#include "cli/commands.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/output.h"
#include "icgame/hull.h"
#include "icgame/learning.h"
#include "icgame/region.h"

namespace icgame::cli {
namespace {

using nlohmann::json;

json ProfileJson(const ActionProfile& p) {
  return {{"index", p.index()}, {"bits", p.BitString()}};
}

json CornersJson(const CornerSet& corners) {
  json arr = json::array();
  for (const Corner& c : corners.corners) {
    json entry = ProfileJson(c.profile);
    entry["rates"] = c.rates.r;
    arr.push_back(entry);
  }
  return arr;
}

void WriteJson(const std::filesystem::path& path, const json& j) {
  std::ofstream out = OpenOutput(path);
  out << j.dump(2) << '\n';
}

ChannelGains SweepGains(const ChannelGains& base, const std::string& parameter,
                        double db) {
  const double a = base.gain(0, 0), b = base.gain(1, 0);
  const double c = base.gain(1, 1), d = base.gain(0, 1);
  const double lin = DbToLinear(db);
  if (parameter == "b") return ChannelGains::TwoUser(a, lin, c, d, base.p_max());
  if (parameter == "d") return ChannelGains::TwoUser(a, b, c, lin, base.p_max());
  return ChannelGains::TwoUser(a, lin, c, lin, base.p_max());
}

double Mean(const std::vector<double>& v) {
  return v.empty() ? 0.0
                   : std::accumulate(v.begin(), v.end(), 0.0) /
                         static_cast<double>(v.size());
}

double SampleStdev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = Mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig:
    case ErrorKind::kInvalidInput:
    case ErrorKind::kNonzeroSilence:
      return kExitConfig;
    case ErrorKind::kCapacity:
      return kExitCapacity;
    case ErrorKind::kUnsupportedDimension:
    case ErrorKind::kDegenerateInput:
      return kExitUnsupported;
  }
  return kExitFailure;
}

void ParallelFor(std::size_t count,
                 const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(
      count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::mutex mu;
  std::size_t next = 0;
  std::exception_ptr failure;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i;
        {
          std::lock_guard lock(mu);
          if (next >= count || failure) return;
          i = next++;
        }
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

int CmdCorners(const ExperimentConfig& cfg, std::ostream& log) {
  const CornerSet corners = EnumerateCorners(cfg.require_gains());
  const std::size_t n = corners.users;
  std::ofstream out = OpenOutput(cfg.out_dir / "corners.csv");
  std::vector<std::string> header{"index", "bits"};
  for (std::size_t i = 0; i < n; ++i) header.push_back("r" + std::to_string(i + 1));
  WriteCsvRow(out, header);
  for (const Corner& c : corners.corners) {
    std::vector<std::string> row{std::to_string(c.profile.index()),
                                 c.profile.BitString()};
    for (double r : c.rates.r) row.push_back(FormatDouble(r));
    WriteCsvRow(out, row);
  }
  log << "corners: " << corners.corners.size() << " rows -> "
      << (cfg.out_dir / "corners.csv").string() << '\n';
  return kExitOk;
}

int CmdRegion(const ExperimentConfig& cfg, std::ostream& log) {
  const ChannelGains& gains = cfg.require_gains();
  const std::size_t n = gains.users();
  const bool want_frontiers = cfg.frontiers.value_or(n == 2);
  if (want_frontiers && n != 2) {
    throw Error(ErrorKind::kUnsupportedDimension,
                "frontier sampling is available for two users only");
  }
  if (n > 3) {
    throw Error(ErrorKind::kUnsupportedDimension,
                "hull construction supports two or three users");
  }

  const CornerSet corners = EnumerateCorners(gains);
  const Hull hull = CrystallizedHull(corners);
  json summary = {{"users", n}, {"corners", CornersJson(corners)}};
  json hull_json = {{"dimension", hull.dimension}};
  if (hull.dimension == 2) {
    hull_json["chain"] = hull.chain;
    summary["b_on_hull"] = hull.is_vertex(3);
  } else {
    hull_json["facets"] = hull.facets;
  }
  summary["hull"] = hull_json;

  if (want_frontiers) {
    std::ofstream out = OpenOutput(cfg.out_dir / "frontiers.csv");
    WriteCsvRow(out, {"frontier", "k", "p1", "p2", "r1", "r2"});
    json curvature;
    for (std::size_t fixed : {std::size_t{1}, std::size_t{0}}) {
      const char* name = fixed == 1 ? "AB" : "BC";
      const FrontierSample s = SampleFrontier(gains, fixed, cfg.frontier_grid);
      for (std::size_t k = 0; k < s.rates.size(); ++k) {
        WriteCsvRow(out, {name, std::to_string(k), FormatDouble(s.powers[k].p[0]),
                          FormatDouble(s.powers[k].p[1]),
                          FormatDouble(s.rates[k][0]),
                          FormatDouble(s.rates[k][1])});
      }
      try {
        curvature[name] = CurvatureName(ClassifyFrontier(s));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kDegenerateInput) throw;
        curvature[name] = "degenerate";
      }
    }
    summary["curvature"] = curvature;
    summary["frontier_grid"] = cfg.frontier_grid;
    log << "curvature: AB " << curvature["AB"].get<std::string>() << ", BC "
        << curvature["BC"].get<std::string>() << '\n';
  }
  WriteJson(cfg.out_dir / "region.json", summary);
  log << "region: hull " << hull_json.dump() << '\n';
  return kExitOk;
}

int CmdAreaSweep(const ExperimentConfig& cfg, std::ostream& log) {
  const ChannelGains& base = cfg.require_gains();
  if (base.users() != 2) {
    throw Error(ErrorKind::kUnsupportedDimension,
                "area sweep is defined for two users");
  }
  if (cfg.sweep.parameter == "interference" &&
      base.gain(0, 0) != base.gain(1, 1)) {
    throw Error(ErrorKind::kConfig,
                "interference sweep needs a == c; sweep 'b' or 'd' explicitly");
  }
  const std::vector<double> dbs = cfg.sweep.points_db();
  struct Row {
    double b, d, pc, via_b, ac, gain;
  };
  std::vector<Row> rows(dbs.size());
  ParallelFor(dbs.size(), [&](std::size_t k) {
    const ChannelGains g = SweepGains(base, cfg.sweep.parameter, dbs[k]);
    Row& r = rows[k];
    r.b = g.gain(1, 0);
    r.d = g.gain(0, 1);
    r.pc = AreaPowerControl(g, cfg.area_grid);
    r.via_b = AreaTimeshareViaB(g);
    r.ac = AreaTimeshareAC(g);
    r.gain = 100.0 * (r.via_b - r.pc) / r.pc;
  });

  std::ofstream out = OpenOutput(cfg.out_dir / "area_sweep.csv");
  WriteCsvRow(out, {"sweep_db", "b", "d", "area_pc", "area_b", "area_ac",
                    "gain_percent"});
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Row& r = rows[k];
    WriteCsvRow(out, {FormatDouble(dbs[k]), FormatDouble(r.b), FormatDouble(r.d),
                      FormatDouble(r.pc), FormatDouble(r.via_b),
                      FormatDouble(r.ac), FormatDouble(r.gain)});
  }
  log << "area-sweep: " << rows.size() << " points -> "
      << (cfg.out_dir / "area_sweep.csv").string() << '\n';
  return kExitOk;
}

int CmdLearn(const ExperimentConfig& cfg, std::ostream& log) {
  const ChannelGains& gains = cfg.require_gains();
  const UtilityTable table = BuildUtilityTable(gains, cfg.mechanism);
  const CornerSet corners = EnumerateCorners(gains);
  const std::size_t n = table.users();

  std::vector<LearningResult> results(cfg.seeds.size());
  ParallelFor(cfg.seeds.size(), [&](std::size_t s) {
    results[s] = Run(table, cfg.learning(cfg.seeds[s]), cfg.learning_ce_eps);
  });

  // Trajectory files are written one at a time, in seed order.
  if (cfg.write_trajectories) {
    for (std::size_t s = 0; s < results.size(); ++s) {
      const Trajectory& tr = results[s].trajectory;
      std::ofstream out = OpenOutput(
          cfg.out_dir /
          ("trajectory_seed" + std::to_string(cfg.seeds[s]) + ".csv"));
      std::vector<std::string> header{"t"};
      for (const char* prefix : {"b", "u", "p"}) {
        for (std::size_t i = 0; i < n; ++i) {
          header.push_back(prefix + std::to_string(i + 1));
        }
      }
      WriteCsvRow(out, header);
      std::vector<std::string> row(1 + 3 * n);
      for (std::size_t t = 0; t < tr.length(); ++t) {
        row[0] = std::to_string(t + 1);
        for (std::size_t i = 0; i < n; ++i) {
          row[1 + i] = ((tr.profiles[t] >> i) & 1u) ? "1" : "0";
          row[1 + n + i] = FormatDouble(tr.utilities[t * n + i]);
          row[1 + 2 * n + i] = FormatDouble(tr.probabilities[t * n + i]);
        }
        WriteCsvRow(out, row);
      }
    }
  }

  const std::size_t corner_count = corners.corners.size();
  json theta_per_seed = json::array(), pmf_per_seed = json::array();
  json rates_per_seed = json::array(), regret_per_seed = json::array();
  json residuals = json::array(), holds = json::array();
  std::vector<std::vector<double>> theta_cols(corner_count);
  std::vector<std::vector<double>> rate_cols(n);
  double max_regret = 0.0, min_residual = 0.0;
  bool all_hold = true;
  for (std::size_t s = 0; s < results.size(); ++s) {
    const LearningResult& r = results[s];
    const std::vector<double>& p = r.empirical.p;
    std::vector<double> theta(p.begin() + 1, p.end());
    std::vector<double> rates(n, 0.0);
    for (std::size_t k = 0; k < corner_count; ++k) {
      theta_cols[k].push_back(theta[k]);
      for (std::size_t i = 0; i < n; ++i) {
        rates[i] += theta[k] * corners.corners[k].rates[i];
      }
    }
    for (std::size_t i = 0; i < n; ++i) rate_cols[i].push_back(rates[i]);
    theta_per_seed.push_back(theta);
    pmf_per_seed.push_back(p);
    rates_per_seed.push_back(rates);
    regret_per_seed.push_back(r.avg_regret);
    residuals.push_back(r.ce.min_residual);
    holds.push_back(r.ce.holds);
    all_hold = all_hold && r.ce.holds;
    max_regret = std::max(max_regret, *std::max_element(r.avg_regret.begin(),
                                                        r.avg_regret.end()));
    min_residual = s == 0 ? r.ce.min_residual
                          : std::min(min_residual, r.ce.min_residual);
  }
  std::vector<double> theta_mean, theta_sd, rate_mean;
  for (const auto& col : theta_cols) {
    theta_mean.push_back(Mean(col));
    theta_sd.push_back(SampleStdev(col));
  }
  for (const auto& col : rate_cols) rate_mean.push_back(Mean(col));

  json nash = json::array();
  for (const ActionProfile& p : PureNash(table)) nash.push_back(ProfileJson(p));

  json summary = {
      {"mechanism", MechanismName(cfg.mechanism)},
      {"users", n},
      {"mu", results.front().mu},
      {"t_max", cfg.t_max},
      {"window", results.front().window},
      {"seeds", cfg.seeds},
      {"theta",
       {{"mean", theta_mean}, {"stdev", theta_sd}, {"per_seed", theta_per_seed}}},
      {"pmf", {{"per_seed", pmf_per_seed}}},
      {"ce_residual",
       {{"eps", cfg.learning_ce_eps},
        {"min", min_residual},
        {"per_seed", residuals},
        {"holds", holds},
        {"all_hold", all_hold}}},
      {"avg_regret", {{"max", max_regret}, {"per_seed", regret_per_seed}}},
      {"learned_rates", {{"mean", rate_mean}, {"per_seed", rates_per_seed}}},
      {"nash_profiles", nash},
  };
  WriteJson(cfg.out_dir / "summary.json", summary);
  log << "learn: " << results.size() << " seeds, theta mean "
      << json(theta_mean).dump() << ", CE " << (all_hold ? "holds" : "violated")
      << " at eps " << cfg.learning_ce_eps << '\n';
  return kExitOk;
}

int CmdCeCheck(const ExperimentConfig& cfg,
               const std::filesystem::path& pmf_path, std::ostream& log) {
  std::ifstream in(pmf_path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kConfig, "cannot read pmf " + pmf_path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  const UtilityTable table =
      BuildUtilityTable(cfg.require_gains(), cfg.mechanism);
  JointDistribution dist{ParsePmfText(ss.str())};
  if (dist.p.size() != table.profiles()) {
    throw Error(ErrorKind::kConfig,
                "pmf has " + std::to_string(dist.p.size()) +
                    " entries; expected " + std::to_string(table.profiles()));
  }
  const CeVerdict v = IsCorrelatedEquilibrium(table, dist, cfg.ce_eps);

  json out = {{"holds", v.holds},
              {"min_residual", v.min_residual},
              {"eps", cfg.ce_eps},
              {"mechanism", MechanismName(cfg.mechanism)}};
  if (v.witness) {
    out["witness"] = {{"user", v.witness->user + 1},
                      {"recommended", v.witness->recommended},
                      {"deviation", v.witness->deviation},
                      {"residual", v.witness->residual}};
  }
  WriteJson(cfg.out_dir / "verdict.json", out);
  if (v.holds) {
    log << "holds (min residual " << FormatDouble(v.min_residual) << ")\n";
    return kExitOk;
  }
  log << "violated: user " << v.witness->user + 1 << " recommended "
      << v.witness->recommended << " deviating to " << v.witness->deviation
      << " residual " << FormatDouble(v.witness->residual) << '\n';
  return kExitViolated;
}

int CmdVcgTable(const ExperimentConfig& cfg, std::ostream& log) {
  const UtilityTable table =
      BuildUtilityTable(cfg.require_gains(), cfg.mechanism);
  const std::size_t n = table.users();
  json rows = json::array();
  for (std::uint32_t k = 0; k < table.profiles(); ++k) {
    const ActionProfile p(n, k);
    json row = ProfileJson(p);
    const auto u = table.row(k);
    row["utility"] = std::vector<double>(u.begin(), u.end());
    rows.push_back(row);
    log << p.BitString();
    for (double v : u) log << ' ' << FormatDouble(v);
    log << '\n';
  }
  json nash = json::array();
  for (const ActionProfile& p : PureNash(table)) nash.push_back(ProfileJson(p));
  WriteJson(cfg.out_dir / "utility_table.json",
            {{"users", n},
             {"mechanism", MechanismName(table.mechanism())},
             {"rows", rows},
             {"nash_profiles", nash}});
  return kExitOk;
}

int Main(int argc, char** argv, std::ostream& log, std::ostream& err) {
  CLI::App app{"Crystallized rates region and regret-matching simulator"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path, out_dir, seeds, pmf_path;
  std::size_t grid = 0;
  app.add_option("--config", config_path, "experiment config (JSON)")
      ->required();
  app.add_option("--out", out_dir, "output directory (overrides config)");
  app.add_option("--seeds", seeds, "seed list, e.g. 1,2,10-20");
  app.add_option("--grid", grid, "power grid for area integration");
  app.add_option("--pmf", pmf_path, "pmf file for ce-check");

  auto* corners = app.add_subcommand("corners", "dump binary power corners");
  auto* region = app.add_subcommand("region", "frontiers, hull, curvature");
  auto* sweep = app.add_subcommand("area-sweep", "region areas vs interference");
  auto* learn = app.add_subcommand("learn", "regret-matching runs");
  auto* ce = app.add_subcommand("ce-check", "correlated equilibrium check");
  auto* vcg = app.add_subcommand("vcg-table", "utility table and pure NE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, log, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    ExperimentConfig cfg = LoadConfig(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!seeds.empty()) cfg.seeds = ParseSeedList(seeds);
    if (grid != 0) cfg.area_grid = grid;

    if (corners->parsed()) return CmdCorners(cfg, log);
    if (region->parsed()) return CmdRegion(cfg, log);
    if (sweep->parsed()) return CmdAreaSweep(cfg, log);
    if (learn->parsed()) return CmdLearn(cfg, log);
    if (vcg->parsed()) return CmdVcgTable(cfg, log);
    if (ce->parsed()) {
      if (pmf_path.empty()) {
        throw Error(ErrorKind::kConfig, "ce-check needs --pmf <path>");
      }
      return CmdCeCheck(cfg, pmf_path, log);
    }
  } catch (const Error& e) {
    err << "error (" << ErrorKindName(e.kind()) << "): " << e.what() << '\n';
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace icgame::cli
