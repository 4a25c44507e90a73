#include "semigrid/selftest.hpp"
#include <cstdio>
int main() {
    bool all = true;
    semigrid::SelftestOptions opt;
    opt.on_result = [&](const semigrid::CriterionResult& r) {
        std::printf("[%s] criterion %2d: %s%s%s\n", r.passed ? "PASS" : "FAIL", r.number,
                    r.name.c_str(), r.detail.empty() ? "" : " -- ", r.detail.c_str());
        std::fflush(stdout);
    };
    for (const auto& r : semigrid::run_selftest(opt)) all = all && r.passed;
    return all ? 0 : 1;
}
