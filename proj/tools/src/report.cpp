#include <conifold_lab/report.hpp>

#include <cmath>
#include <cstdio>

namespace conifold::lab {

std::string to_string(Compare c) {
    switch (c) {
        case Compare::le: return "le";
        case Compare::lt: return "lt";
        case Compare::ge: return "ge";
        case Compare::gt: return "gt";
        default: return "eq";
    }
}

Assertion make_assertion(std::string name, double measured, Compare compare, double tolerance) {
    Assertion a;
    a.name = std::move(name);
    a.measured = measured;
    a.compare = compare;
    a.tolerance = tolerance;
    if (std::isnan(measured)) {
        a.passed = false;
        return a;
    }
    switch (compare) {
        case Compare::le: a.passed = measured <= tolerance; break;
        case Compare::lt: a.passed = measured < tolerance; break;
        case Compare::ge: a.passed = measured >= tolerance; break;
        case Compare::gt: a.passed = measured > tolerance; break;
        case Compare::eq: a.passed = measured == tolerance; break;
    }
    return a;
}

Tolerances::Tolerances(std::map<std::string, double> overrides) : overrides_(std::move(overrides)) {}

double Tolerances::get(const std::string& name, double fallback) {
    const auto it = overrides_.find(name);
    if (it == overrides_.end()) return fallback;
    used_.insert(name);
    return it->second;
}

std::vector<std::string> Tolerances::unused() const {
    std::vector<std::string> out;
    for (const auto& [name, value] : overrides_) {
        if (!used_.count(name)) out.push_back(name);
    }
    return out;
}

void Report::check(Tolerances& tol, const std::string& name, double measured, Compare compare,
                   double default_tolerance) {
    add(make_assertion(name, measured, compare, tol.get(name, default_tolerance)));
}

bool Report::passed() const {
    for (const auto& a : assertions) {
        if (!a.passed) return false;
    }
    return true;
}

std::vector<std::string> Report::failures() const {
    std::vector<std::string> out;
    for (const auto& a : assertions) {
        if (!a.passed) out.push_back(a.name);
    }
    return out;
}

namespace {

// JSON has no infinities; keep the report valid for any measured value.
Json number(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

}  // namespace

Json assertion_json(const Assertion& a) {
    Json j;
    j["name"] = a.name;
    j["compare"] = to_string(a.compare);
    j["tolerance"] = number(a.tolerance);
    j["measured"] = number(a.measured);
    j["passed"] = a.passed;
    return j;
}

Json Report::to_json() const {
    Json j;
    j["schema"] = kSchemaVersion;
    j["command"] = command;
    j["inputs"] = inputs;
    j["results"] = results;
    Json list = Json::array();
    for (const auto& a : assertions) list.push_back(assertion_json(a));
    j["assertions"] = list;
    j["passed"] = passed();
    if (include_timings) {
        Json t = Json::object();
        for (const auto& [stage, seconds] : timings) t[stage] = seconds;
        j["timings"] = t;
    }
    return j;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace conifold::lab
