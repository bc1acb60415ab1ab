/* Acceptance gate: runs every criterion and prints one line per verdict.
 * Exit code 0 iff everything passed. */

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "semikit/acceptance.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 0;
    std::string suite = "all";
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
            seed = std::strtoull(argv[++i], nullptr, 10);
        } else if (std::strcmp(argv[i], "--suite") == 0 && i + 1 < argc) {
            suite = argv[++i];
        } else {
            std::fprintf(stderr, "usage: %s [--suite NAME] [--seed N]\n", argv[0]);
            return 2;
        }
    }
    semikit::AcceptanceReport report = semikit::run_acceptance(suite, seed);
    for (const auto& c : report.criteria) {
        std::printf("[%s] %-4s %-58s (%.2fs/%.0fs) %s\n", c.ok ? "PASS" : "FAIL", c.id.c_str(),
                    c.title.c_str(), c.seconds, c.budget_seconds, c.detail.c_str());
    }
    std::printf("%s: %zu criteria, suite=%s, seed=%llu\n",
                report.all_passed() ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
                report.criteria.size(), report.suite.c_str(),
                static_cast<unsigned long long>(report.seed));
    return report.all_passed() ? 0 : 1;
}
