// Runs the eight acceptance criteria and prints one pass/fail line for each.
#include <cstdio>

#include "lcacalc/selftest.hpp"

int main() {
    lca::Engine engine;
    lca::SelftestReport report = lca::run_selftest(engine, /*seed=*/0);
    std::fputs(lca::format_report(report).c_str(), stdout);
    return report.all_pass() ? 0 : 1;
}
