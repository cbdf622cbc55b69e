#pragma once

#include <functional>
#include <string>
#include <vector>

#include "spdc/config.hpp"

namespace spdc {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct ValidationOptions {
    RunConfig base = parse_config(reference_config_text());
    std::vector<int> criteria;      // empty: 1 to 11
    unsigned workers = 0;           // 0: worker_count()
    SimdLevel simd = detect_simd_level();
    std::function<void(const CriterionResult&)> on_result;
};

inline constexpr int kCriterionCount = 11;

// Runs the acceptance criteria in ascending order; maps shared between
// criteria are computed once.
std::vector<CriterionResult> run_acceptance(const ValidationOptions& opts);

std::string format_result(const CriterionResult& r);

// Longest run of consecutive indices over which successive differences
// alternate in sign; values below floor end a run. Returns the number of
// indices covered (0 or at least 2).
int alternation_window(const std::vector<double>& values, double floor);

}  // namespace spdc
