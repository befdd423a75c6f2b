#include "cli/config.h"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "icgame/error.h"

namespace icgame::cli {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& msg) {
  throw Error(ErrorKind::kConfig, msg);
}

void RejectUnknownKeys(const json& obj, const std::set<std::string>& known,
                       const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!known.count(key)) Fail("unknown key '" + key + "' in " + where);
  }
}

const json& RequireObject(const json& j, const std::string& where) {
  if (!j.is_object()) Fail(where + " must be an object");
  return j;
}

double Number(const json& j, const std::string& where) {
  if (!j.is_number()) Fail(where + " must be a number");
  return j.get<double>();
}

std::size_t Count(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    Fail(where + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

ChannelGains ParseChannel(const json& ch) {
  RequireObject(ch, "channel");
  RejectUnknownKeys(ch, {"a", "b", "c", "d", "gains", "p_max", "units"},
                    "channel");
  const double p_max = ch.contains("p_max") ? Number(ch["p_max"], "p_max") : 1.0;
  bool db = false;
  if (ch.contains("units")) {
    const std::string units = ch["units"].get<std::string>();
    if (units == "db") {
      db = true;
    } else if (units != "linear") {
      Fail("channel.units must be 'linear' or 'db'");
    }
  }
  auto conv = [db](double v) { return db ? DbToLinear(v) : v; };

  if (ch.contains("gains")) {
    if (ch.contains("a") || ch.contains("b") || ch.contains("c") ||
        ch.contains("d")) {
      Fail("channel takes either 'gains' or a/b/c/d, not both");
    }
    const json& rows = ch["gains"];
    if (!rows.is_array()) Fail("channel.gains must be a matrix");
    std::vector<std::vector<double>> m;
    for (const json& row : rows) {
      if (!row.is_array()) Fail("channel.gains rows must be arrays");
      std::vector<double> r;
      for (const json& v : row) r.push_back(conv(Number(v, "gain")));
      m.push_back(std::move(r));
    }
    return ChannelGains(std::move(m), p_max);
  }
  for (const char* k : {"a", "b", "c", "d"}) {
    if (!ch.contains(k)) Fail(std::string("channel.") + k + " missing");
  }
  return ChannelGains::TwoUser(conv(Number(ch["a"], "a")),
                               conv(Number(ch["b"], "b")),
                               conv(Number(ch["c"], "c")),
                               conv(Number(ch["d"], "d")), p_max);
}

}  // namespace

std::vector<double> SweepSpec::points_db() const {
  std::vector<double> out;
  if (steps == 1) return {db_min};
  for (std::size_t k = 0; k < steps; ++k) {
    out.push_back(db_min + (db_max - db_min) * static_cast<double>(k) /
                               static_cast<double>(steps - 1));
  }
  return out;
}

const ChannelGains& ExperimentConfig::require_gains() const {
  if (!gains) Fail("config has no channel section");
  return *gains;
}

LearningConfig ExperimentConfig::learning(std::uint64_t seed) const {
  LearningConfig lc;
  lc.mu = mu;
  lc.t_max = t_max;
  lc.seed = seed;
  lc.window = window;
  lc.initial_p = initial_p;
  return lc;
}

ExperimentConfig ParseConfig(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::exception& e) {
    Fail(std::string("config is not valid JSON: ") + e.what());
  }
  RequireObject(root, "config");
  RejectUnknownKeys(root,
                    {"channel", "mechanism", "learning", "sweep", "grid",
                     "eps", "output", "frontiers"},
                    "config");

  ExperimentConfig cfg;
  try {
    if (root.contains("channel")) cfg.gains = ParseChannel(root["channel"]);
    if (root.contains("mechanism")) {
      cfg.mechanism = ParseMechanism(root["mechanism"].get<std::string>());
    }
    if (root.contains("frontiers")) {
      if (!root["frontiers"].is_boolean()) Fail("frontiers must be boolean");
      cfg.frontiers = root["frontiers"].get<bool>();
    }
    if (root.contains("learning")) {
      const json& l = RequireObject(root["learning"], "learning");
      RejectUnknownKeys(l, {"mu", "t_max", "seeds", "window", "initial_p"},
                        "learning");
      if (l.contains("mu")) cfg.mu = Number(l["mu"], "learning.mu");
      if (l.contains("t_max")) cfg.t_max = Count(l["t_max"], "learning.t_max");
      if (l.contains("seeds")) {
        cfg.seeds.clear();
        for (const json& s : l["seeds"]) {
          cfg.seeds.push_back(Count(s, "learning.seeds[]"));
        }
      }
      if (l.contains("window")) {
        cfg.window = Count(l["window"], "learning.window");
      }
      if (l.contains("initial_p")) {
        for (const json& p : l["initial_p"]) {
          cfg.initial_p.push_back(Number(p, "learning.initial_p[]"));
        }
      }
    }
    if (root.contains("sweep")) {
      const json& s = RequireObject(root["sweep"], "sweep");
      RejectUnknownKeys(s, {"parameter", "db_min", "db_max", "steps"},
                        "sweep");
      if (s.contains("parameter")) {
        cfg.sweep.parameter = s["parameter"].get<std::string>();
      }
      if (s.contains("db_min")) cfg.sweep.db_min = Number(s["db_min"], "db_min");
      if (s.contains("db_max")) cfg.sweep.db_max = Number(s["db_max"], "db_max");
      if (s.contains("steps")) cfg.sweep.steps = Count(s["steps"], "steps");
    }
    if (root.contains("grid")) {
      const json& g = RequireObject(root["grid"], "grid");
      RejectUnknownKeys(g, {"area", "frontier"}, "grid");
      if (g.contains("area")) cfg.area_grid = Count(g["area"], "grid.area");
      if (g.contains("frontier")) {
        cfg.frontier_grid = Count(g["frontier"], "grid.frontier");
      }
    }
    if (root.contains("eps")) {
      const json& e = RequireObject(root["eps"], "eps");
      RejectUnknownKeys(e, {"ce", "learning_ce"}, "eps");
      if (e.contains("ce")) cfg.ce_eps = Number(e["ce"], "eps.ce");
      if (e.contains("learning_ce")) {
        cfg.learning_ce_eps = Number(e["learning_ce"], "eps.learning_ce");
      }
    }
    if (root.contains("output")) {
      const json& o = RequireObject(root["output"], "output");
      RejectUnknownKeys(o, {"dir", "trajectories"}, "output");
      if (o.contains("dir")) cfg.out_dir = o["dir"].get<std::string>();
      if (o.contains("trajectories")) {
        cfg.write_trajectories = o["trajectories"].get<bool>();
      }
    }
  } catch (const json::exception& e) {
    Fail(std::string("config value has the wrong type: ") + e.what());
  } catch (const Error& e) {
    // Channel validation errors surface as config errors here.
    if (e.kind() == ErrorKind::kConfig) throw;
    Fail(e.what());
  }

  if (cfg.seeds.empty()) Fail("learning.seeds must not be empty");
  if (cfg.sweep.steps == 0) Fail("sweep.steps must be positive");
  if (cfg.sweep.parameter != "interference" && cfg.sweep.parameter != "b" &&
      cfg.sweep.parameter != "d") {
    Fail("sweep.parameter must be 'interference', 'b' or 'd'");
  }
  return cfg;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  ExperimentConfig cfg = ParseConfig(ss.str());
  return cfg;
}

std::vector<std::uint64_t> ParseSeedList(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dash = item.find('-');
    try {
      if (dash != std::string::npos && dash > 0) {
        const auto lo = std::stoull(item.substr(0, dash));
        const auto hi = std::stoull(item.substr(dash + 1));
        if (hi < lo) Fail("seed range '" + item + "' is reversed");
        for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
      } else {
        std::size_t used = 0;
        seeds.push_back(std::stoull(item, &used));
        if (used != item.size()) Fail("bad seed '" + item + "'");
      }
    } catch (const std::logic_error&) {
      Fail("bad seed '" + item + "'");
    }
  }
  if (seeds.empty()) Fail("seed list is empty");
  return seeds;
}

std::vector<double> ParsePmfText(const std::string& text) {
  std::vector<double> out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    line = line.substr(0, line.find('#'));
    for (char& c : line) {
      if (c == ',' || c == ';') c = ' ';
    }
    std::istringstream words(line);
    std::string w;
    while (words >> w) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(w, &used);
      } catch (const std::logic_error&) {
        Fail("malformed pmf entry '" + w + "'");
      }
      if (used != w.size()) Fail("malformed pmf entry '" + w + "'");
      out.push_back(v);
    }
  }
  if (out.empty()) Fail("pmf file has no entries");
  return out;
}

}  // namespace icgame::cli
