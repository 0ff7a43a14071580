#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace fibspec {

struct SubCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    double seconds = 0.0;
    std::vector<SubCheck> subchecks;
};

/// Run one verification criterion (1..12).
CriterionResult run_criterion(int id);

/// All criteria in order.
std::vector<CriterionResult> run_all_criteria();

/// Randomized cross-checks of the exact recursions (seeded, deterministic
/// for a fixed seed). Used by the CLI verify command as a prelude.
std::vector<SubCheck> run_property_sweeps(std::uint64_t seed);

/// One line per criterion; returns true when everything passed.
bool print_results(std::ostream& os, const std::vector<CriterionResult>& results,
                   bool with_subchecks = true);

inline constexpr int criterion_count = 12;

}  // namespace fibspec
