#pragma once

#include <string>
#include <vector>

#include "lcacalc/homext.hpp"

namespace lca {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    int checks = 0;           // number of individual assertions evaluated
    std::string detail;       // first few failure messages, empty on pass
};

struct SelftestReport {
    std::vector<CriterionResult> criteria;
    bool all_pass() const;
};

// Runs the eight acceptance criteria against the given engine. The seed
// drives the randomized duality suite only; every other criterion is
// deterministic.
SelftestReport run_selftest(const Engine& engine, unsigned seed = 0);

// One line per criterion: "criterion N (<name>): PASS|FAIL ...".
std::string format_report(const SelftestReport& report);

} // namespace lca
