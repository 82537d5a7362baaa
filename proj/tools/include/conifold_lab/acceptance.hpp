#pragma once

#include <conifold_lab/report.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace conifold::lab {

enum class Profile { fast, full };

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<Assertion> assertions;
    double seconds = 0.0;
    double time_limit = 0.0;

    bool passed() const;
};

struct AcceptanceOptions {
    Profile profile = Profile::full;
    std::uint64_t seed = 0;
    bool check_runtime = true;  // adds a runtime_s assertion per criterion
};

// Runs the twelve acceptance criteria in order, reporting each one through
// on_done as soon as it finishes.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& opts,
    const std::function<void(const CriterionResult&)>& on_done = {});

}  // namespace conifold::lab
