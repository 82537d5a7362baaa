#pragma once

#include <json.hpp>

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace conifold::lab {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum class Compare { le, lt, ge, gt, eq };

std::string to_string(Compare c);

struct Assertion {
    std::string name;
    double tolerance = 0.0;
    double measured = 0.0;
    Compare compare = Compare::le;
    bool passed = false;
};

Assertion make_assertion(std::string name, double measured, Compare compare, double tolerance);

// Tolerance overrides from --tol name=value. Every override must be used by
// the command that runs, otherwise the run is a usage error.
class Tolerances {
public:
    Tolerances() = default;
    explicit Tolerances(std::map<std::string, double> overrides);

    double get(const std::string& name, double fallback);
    std::vector<std::string> unused() const;

private:
    std::map<std::string, double> overrides_;
    std::set<std::string> used_;
};

struct Report {
    std::string command;
    Json inputs = Json::object();
    Json results = Json::object();
    std::vector<Assertion> assertions;
    std::vector<std::pair<std::string, double>> timings;
    bool include_timings = false;
    std::string csv;  // set when the command emits CSV instead of JSON

    void check(Tolerances& tol, const std::string& name, double measured, Compare compare,
               double default_tolerance);
    void add(Assertion a) { assertions.push_back(std::move(a)); }

    bool passed() const;
    std::vector<std::string> failures() const;
    Json to_json() const;
};

Json assertion_json(const Assertion& a);

// %.17g, the CSV number format.
std::string format_double(double x);

}  // namespace conifold::lab
