#include <chrono>
#include <cstdio>

#include "csf/config.hpp"
#include "csf/experiments.hpp"

// Runs every acceptance check at the default resolution and tolerances and
// prints one line per check. Exit status 0 iff all pass.
int main()
{
    auto start = std::chrono::steady_clock::now();
    csf::VerificationReport r = csf::run_verify(csf::ExperimentConfig{});
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    int passed = 0;
    for (const auto& c : r.checks) {
        if (c.status == "pass") ++passed;
        std::printf("criterion %2d %-24s %s  measured %.6g  tolerance %.6g\n", c.id, c.name.c_str(),
                    c.status == "pass" ? "PASS" : c.status == "fail" ? "FAIL" : "ERROR", c.measured, c.tolerance);
        for (const auto& d : c.details)
            if (!d.pass)
                std::printf("    failed: %s: %.6g vs %s %.6g\n", d.label.c_str(), d.measured, d.lowerBound ? ">=" : "<=",
                            d.tolerance);
        if (c.status == "error") std::printf("    error: %s\n", c.message.c_str());
    }
    std::printf("%d of %zu criteria passed (%.1f s)\n", passed, r.checks.size(), secs);
    return r.verdict ? 0 : 1;
}
