// verify.hpp — The acceptance suite: one record per criterion, measured values
// included so failures are diagnosable from verify.json alone.
#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace tadpole {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    nlohmann::json measured;
    double runtime_s = 0.0;
};

// Runs all ten criteria. `scratch_dir` is used for the determinism check
// (criterion 10) and must be writable.
std::vector<CriterionResult> run_acceptance(const std::string& scratch_dir);

nlohmann::json acceptance_to_json(const std::vector<CriterionResult>& results);

} // namespace tadpole
