#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <ostream>
#include <vector>

#include "cli/config.h"
#include "icgame/error.h"

namespace icgame::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCapacity = 3;
inline constexpr int kExitViolated = 4;
inline constexpr int kExitUnsupported = 5;

int ExitCodeFor(ErrorKind kind);

// Runs fn(0..count-1) across hardware threads. Each index is handled by
// exactly one call, so writing results into slot i keeps output order.
void ParallelFor(std::size_t count, const std::function<void(std::size_t)>& fn);

// Every command writes its artifacts under cfg.out_dir and a short report
// to `log`. The return value is the process exit code.
int CmdCorners(const ExperimentConfig& cfg, std::ostream& log);
int CmdRegion(const ExperimentConfig& cfg, std::ostream& log);
int CmdAreaSweep(const ExperimentConfig& cfg, std::ostream& log);
int CmdLearn(const ExperimentConfig& cfg, std::ostream& log);
int CmdCeCheck(const ExperimentConfig& cfg,
               const std::filesystem::path& pmf_path, std::ostream& log);
int CmdVcgTable(const ExperimentConfig& cfg, std::ostream& log);

// Full command line: `icgame <subcommand> --config <path> [--out <dir>]
// [--seeds 1,2,5-8] [--grid N] [--pmf <path>]`.
int Main(int argc, char** argv, std::ostream& log, std::ostream& err);

}  // namespace icgame::cli
