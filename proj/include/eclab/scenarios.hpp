#pragma once

#include <string>
#include <vector>

#include "eclab/experiments.hpp"

namespace eclab::scenarios {

/// One acceptance-suite scenario: an exact identity or a deviation-trend
/// check with its tolerance pinned in code.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    std::vector<experiments::Report> reports;
    double seconds = 0.0;
};

const std::vector<std::string>& names();  // index 0 <-> criterion 1
CriterionResult run(int id);
CriterionResult run(const std::string& name);

}  // namespace eclab::scenarios
