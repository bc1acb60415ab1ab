#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace semikit {

/* The acceptance gate: one entry per criterion, each with its functional
 * verdict, a wall-clock budget taken from the criterion itself, and a short
 * human-readable outcome. Deterministic for a fixed seed. */
struct CriterionResult {
    std::string id;           // "A1".."A11"
    std::string title;
    bool ok = false;          // functional verdict AND time budget
    bool functional_ok = false;
    double seconds = 0.0;
    double budget_seconds = 0.0;
    std::string detail;
};

struct AcceptanceReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<CriterionResult> criteria;
    bool all_passed() const {
        for (const auto& c : criteria)
            if (!c.ok) return false;
        return true;
    }
};

/* Suites: lattice (A1-A2), bg (A3), bx (A4, A11), posmodel (A5-A8),
 * flatness (A9-A10), all. */
std::vector<std::string> acceptance_suites();
AcceptanceReport run_acceptance(const std::string& suite, std::uint64_t seed);

}  // namespace semikit
