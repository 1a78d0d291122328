#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spdc/core.hpp"

namespace spdc::cli {

// Exit codes: 0 success, 1 usage error, 2 validation error, 3 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

// Full command dispatch; argv as received by main().
int run(int argc, const char* const* argv);

struct ScenarioSummary {
  std::vector<std::string> files;              // paths written
  std::map<std::string, double> metrics;       // named summary values
};

std::vector<std::string> preset_names();

// Runs one named preset, writing its CSV outputs under out_dir.
ScenarioSummary run_scenario(const std::string& name, const std::string& out_dir,
                             std::uint64_t seed, int shards = 1);

}  // namespace spdc::cli
