// Acceptance gate: runs the full verification suite and prints one PASS/FAIL
// line per criterion, then the detailed check table. Exits nonzero if any
// criterion fails.
#include <cstdio>
#include <cstring>
#include <map>
#include <string>

#include "mhdinv/verify.hpp"

int main() {
    using namespace mhdinv;
    Scenario base = default_verify_scenario();
    VerifySummary sum;
    try {
        sum = acceptance_suite(base, "out/acceptance");
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance suite aborted: %s\n", e.what());
        return 2;
    }

    static const char* label[11] = {
        "uniform static state: all report norms at round-off",
        "potential vorticity: order >= 3.5 and residual separation",
        "hydrodynamic limit: Ertel order and tracer drift",
        "curl-form system matches the potential-vorticity law",
        "map reconstruction orders and density factoring",
        "label-space momentum residual order",
        "determining equations: convergence and mutation detection",
        "Bianchi identity: both sides and their pushforward relation",
        "foliation geometry: cartesian round-off, curved convergence",
        "solver structure: div B and energy/mass drift",
        "byte-identical reruns",
    };

    std::map<int, bool> crit;
    for (int c = 1; c <= 11; ++c) crit[c] = true;
    for (const CheckResult& c : sum.checks) {
        if (c.name.size() < 4 || c.name[0] != 'c') continue;
        int idx = std::atoi(c.name.substr(1, 2).c_str());
        if (idx >= 1 && idx <= 11) crit[idx] = crit[idx] && c.pass;
    }

    std::printf("\n");
    int failed = 0;
    for (int c = 1; c <= 11; ++c) {
        bool ok = crit[c];
        if (!ok) ++failed;
        std::printf("criterion %2d: %s  [%s]\n", c, ok ? "PASS" : "FAIL", label[c - 1]);
    }
    std::printf("\n");
    print_checks(sum, stdout);
    if (!sum.all_pass || failed > 0) {
        std::printf("\nACCEPTANCE: FAIL (%d criteria failing)\n", failed);
        return 1;
    }
    std::printf("\nACCEPTANCE: PASS (11/11 criteria)\n");
    return 0;
}
