#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace arl::acceptance {

struct CriterionResult {
    std::string id;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct Options {
    std::uint64_t seed = 20130515;
    std::vector<int> d_list{3, 4, 5};
    /// Monte Carlo counts divided by 100 and floating tolerances widened
    /// threefold; results are labeled "quick".
    bool quick = false;
};

/// Runs the full acceptance suite; one result per criterion.
std::vector<CriterionResult> run_all(const Options& opt);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace arl::acceptance
