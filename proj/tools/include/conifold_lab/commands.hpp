#pragma once

#include <conifold_lab/report.hpp>

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace conifold::lab {

// Invalid flags or flag combinations; the process exits with status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { json, csv };

struct RunConfig {
    std::string command;
    std::map<std::string, double> tolerances;
    std::uint64_t seed = 0;
    std::string output = "-";
    Format format = Format::json;
    bool timings = false;

    // hodge
    int n = 4;
    int d = 5;

    // metric
    std::string family = "smoothed";
    std::complex<double> t{1.0, 0.0};
    double a = 1.0;
    std::optional<double> tau_min;
    std::optional<double> tau_max;
    int points = 50;
    std::string sweep;  // empty, profile, deviation, convergence, ma
    std::string grid = "log";
    std::vector<double> params;

    // slag
    int resolution = 32;
    int nodes = 100;

    // transition
    std::optional<long> h11, h21, h11_after, h21_after, b1, b2, b3, N, k, c;

    // dwork
    bool exact = false;
    int random_points = 200;

    // friedman
    std::string classes_file;
    std::string classes_json;
    std::string example;

    // verify-all
    bool full = false;
};

// "x" or "x,y" -> x + i y.
std::complex<double> parse_complex(const std::string& text);

Report run(const RunConfig& config);

// Exit status for a finished report: 0 when every assertion passed, 1 otherwise.
int exit_status(const Report& report);

}  // namespace conifold::lab
