#include <conifold_lab/commands.hpp>

#include <conifold/error.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using conifold::lab::Format;
using conifold::lab::RunConfig;
using conifold::lab::UsageError;

void parse_tolerances(const std::vector<std::string>& specs, RunConfig& cfg) {
    for (const auto& s : specs) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--tol expects name=value, got '" + s + "'");
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s.substr(eq + 1), &used);
        } catch (const std::logic_error&) {
            used = 0;
        }
        if (used == 0 || used != s.size() - eq - 1) throw UsageError("bad tolerance value in '" + s + "'");
        cfg.tolerances[s.substr(0, eq)] = v;
    }
}

void write_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.output == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) throw UsageError("cannot open output file '" + cfg.output + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical and exact checks for conifold transitions"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    RunConfig cfg;
    std::vector<std::string> tols;
    std::string format = "json";
    std::string t_text = "1";
    std::string params_text;
    app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    app.add_option("-o,--output", cfg.output, "Output path, - for stdout")->capture_default_str();
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--tol", tols, "Tolerance override name=value (repeatable)");
    app.add_flag("--timings", cfg.timings, "Include wall-clock timings and runtime assertions");

    auto* hodge = app.add_subcommand("hodge", "Hodge diamond of a smooth hypersurface");
    hodge->add_option("--n", cfg.n, "Ambient dimension of P^n")->capture_default_str();
    hodge->add_option("--d", cfg.d, "Degree")->capture_default_str();

    auto* metric = app.add_subcommand("metric", "Ricci-flat potentials and their certificates");
    metric->add_option("--family", cfg.family, "cone, smoothed or resolved")->capture_default_str();
    metric->add_option("--t", t_text, "Smoothing parameter x or x,y");
    metric->add_option("--a", cfg.a, "Resolution size")->capture_default_str();
    metric->add_option("--tau-min", cfg.tau_min, "Lower end of the tau grid");
    metric->add_option("--tau-max", cfg.tau_max, "Upper end of the tau grid");
    metric->add_option("--points", cfg.points, "Grid points")->capture_default_str();
    metric->add_option("--sweep", cfg.sweep, "profile, deviation, convergence or ma");
    metric->add_option("--grid", cfg.grid, "log or linear")->capture_default_str();
    metric->add_option("--params", params_text, "Comma-separated parameters for the convergence sweep");

    auto* slag = app.add_subcommand("slag", "Vanishing-cycle period and calibration");
    slag->add_option("--t", t_text, "Smoothing parameter x or x,y");
    slag->add_option("--resolution", cfg.resolution, "Even grid resolution >= 8")->capture_default_str();
    slag->add_option("--nodes", cfg.nodes, "Calibration nodes")->capture_default_str();

    auto* trans = app.add_subcommand("transition", "Topology change; no flags prints the catalog");
    trans->add_option("--h11", cfg.h11);
    trans->add_option("--h21", cfg.h21);
    trans->add_option("--h11-after", cfg.h11_after);
    trans->add_option("--h21-after", cfg.h21_after);
    trans->add_option("--b1", cfg.b1);
    trans->add_option("--b2", cfg.b2);
    trans->add_option("--b3", cfg.b3);
    trans->add_option("--N", cfg.N, "Number of nodes");
    trans->add_option("--k", cfg.k, "Independent relations among vanishing cycles");
    trans->add_option("--c", cfg.c, "Independent relations among contracted curves");

    auto* dwork = app.add_subcommand("dwork", "Nodes of the Dwork quintic at psi = 1");
    dwork->add_flag("--exact", cfg.exact, "Also certify each node in Z[xi]");
    dwork->add_option("--random", cfg.random_points, "Random smooth points to test")->capture_default_str();

    auto* fried = app.add_subcommand("friedman", "All-nonzero relation among curve classes");
    auto* f_csv = fried->add_option("--classes", cfg.classes_file, "CSV file, one class per row");
    auto* f_json = fried->add_option("--json", cfg.classes_json, "Inline JSON array of rows");
    auto* f_ex = fried->add_option("--example", cfg.example, "tian-yau, single, zero or basis2");
    f_csv->excludes(f_json)->excludes(f_ex);
    f_json->excludes(f_ex);

    auto* verify = app.add_subcommand("verify-all", "Run every acceptance criterion");
    auto* fast = verify->add_flag("--fast", "Reduced grids (default)");
    auto* full = verify->add_flag("--full", cfg.full, "Acceptance-grade grids");
    fast->excludes(full);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        cfg.command = app.get_subcommands().front()->get_name();
        cfg.format = format == "csv" ? Format::csv : Format::json;
        parse_tolerances(tols, cfg);
        cfg.t = conifold::lab::parse_complex(t_text);
        if (!params_text.empty()) {
            std::stringstream ss(params_text);
            std::string item;
            while (std::getline(ss, item, ',')) {
                try {
                    cfg.params.push_back(std::stod(item));
                } catch (const std::logic_error&) {
                    throw UsageError("bad --params entry '" + item + "'");
                }
            }
        }
        const conifold::lab::Report rep = conifold::lab::run(cfg);
        write_output(cfg, cfg.format == Format::csv ? rep.csv : rep.to_json().dump(2) + "\n");
        for (const auto& name : rep.failures()) std::cerr << "FAILED: " << name << "\n";
        return conifold::lab::exit_status(rep);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const conifold::DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
