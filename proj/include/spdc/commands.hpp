#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "spdc/config.hpp"
#include "spdc/grid_io.hpp"

namespace spdc {

enum class MapMode { numeric, analytic, both };

struct CommandOptions {
    std::string command;               // indices, as, cas, oam, sweep, validate
    RunConfig config;
    std::filesystem::path out_dir;
    MapMode mode = MapMode::both;
    HeatmapScale scale = HeatmapScale::linear;
    bool auto_idler = false;
    std::vector<int> criteria;         // validate only; empty runs all
    unsigned workers = 0;              // 0: worker_count()
    SimdLevel simd = detect_simd_level();
};

enum ExitCode { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

// Writes the artifacts and summary.json into out_dir. Progress goes to log.
int run_command(const CommandOptions& opts, std::ostream& log);

}  // namespace spdc
