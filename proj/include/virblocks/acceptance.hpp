#pragma once

// The integration checklist: one entry per verified statement, each with a
// pinned scope and exact tolerance. The test binary and `report all` both
// run through this list.

#include <functional>
#include <string>
#include <vector>

namespace virblocks {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

struct CriterionSpec {
    int id;
    std::string name;
    std::function<bool(std::string& detail)> run;
};

const std::vector<CriterionSpec>& acceptance_criteria();

// Runs criteria (all, or the ids listed), in order.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {}, int jobs = 2);

} // namespace virblocks
