#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace icgame::cli {

// Shortest text that parses back to the same double.
std::string FormatDouble(double v);

std::ofstream OpenOutput(const std::filesystem::path& path);

void WriteCsvRow(std::ostream& out, const std::vector<std::string>& cells);

}  // namespace icgame::cli
