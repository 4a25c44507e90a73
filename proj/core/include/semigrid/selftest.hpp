// The acceptance suite as a library: twelve checks covering the adder
// tableaux, sign/normalization soundness against the oracle, automaton
// agreement, constant identities, rotation algebra, geometry, region DFAs,
// rectangle areas, the omega sign detector and Pell pairs.  The gridctl
// `selftest` subcommand and the acceptance test binary both run these.

#pragma once

#include <functional>
#include <string>
#include <vector>

namespace semigrid {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SelftestOptions {
    // Scales the randomized sample counts (1 = full acceptance volumes).
    double scale = 1.0;
    std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> run_selftest(const SelftestOptions& options = {});

}  // namespace semigrid
