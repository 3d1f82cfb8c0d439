#pragma once

#include <optional>
#include <string>
#include <vector>

namespace dw::validate {

struct CriterionResult {
    std::string id;
    std::string description;
    bool passed;
    double measured;   // worst observed value
    double threshold;  // pinned acceptance bound
    std::string detail;
    double seconds;
};

struct Options {
    std::vector<std::string> only;  // empty = all
    std::optional<double> g_oracle; // overrides g in the oracle-agreement check
};

std::vector<CriterionResult> run_acceptance(const Options& opts = {});

}  // namespace dw::validate
