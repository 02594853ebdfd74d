// Command-line front end over the C interface.
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hotspots_lab.h"

namespace {

struct Options {
    std::vector<std::string> triangles;
    std::string levels;
    int order = 2;
    int grid = 20;
    int steps = 32;
    int jobs = 1;
    std::string out;
    std::string seed;
    std::string seed_field;
    std::string test_hook;
    double tol_grad = -1.0, tol_mono = -1.0, tol_vertex = -1.0;
};

int default_jobs() {
    const char* env = std::getenv("HOTSPOTS_LAB_JOBS");
    if (!env) return 1;
    try {
        return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
        return 1;
    }
}

bool parse_levels(const std::string& s, int& lo, int& hi) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) return false;
    try {
        std::size_t a = 0, b = 0;
        lo = std::stoi(s.substr(0, colon), &a);
        hi = std::stoi(s.substr(colon + 1), &b);
        return a == colon && b == s.size() - colon - 1;
    } catch (const std::exception&) {
        return false;
    }
}

int config_error(hsl_config* c, const std::string& what) {
    std::cerr << "error: " << what << "\n";
    hsl_config_free(c);
    return HSL_INVALID_CONFIG;
}

int execute(const std::string& command, const Options& o, const CLI::App& sub) {
    hsl_config* c = nullptr;
    if (hsl_config_create(command.c_str(), &c) != HSL_OK) {
        std::cerr << "error: " << hsl_last_error() << "\n";
        return HSL_SOLVER_FAILURE;
    }
    for (const std::string& t : o.triangles) {
        if (hsl_config_add_triangle(c, t.c_str()) != HSL_OK) return config_error(c, hsl_last_error());
    }
    if (!o.levels.empty()) {
        int lo = 0, hi = 0;
        if (!parse_levels(o.levels, lo, hi)) return config_error(c, "--levels expects lo:hi, got '" + o.levels + "'");
        hsl_config_set_levels(c, lo, hi);
    }
    hsl_config_set_int(c, "order", o.order);
    hsl_config_set_int(c, "grid", o.grid);
    hsl_config_set_int(c, "steps", o.steps);
    hsl_config_set_int(c, "jobs", o.jobs);
    if (o.tol_grad >= 0) hsl_config_set_double(c, "tol-grad", o.tol_grad);
    if (o.tol_mono >= 0) hsl_config_set_double(c, "tol-mono", o.tol_mono);
    if (o.tol_vertex >= 0) hsl_config_set_double(c, "tol-vertex", o.tol_vertex);
    if (!o.out.empty()) hsl_config_set_string(c, "out", o.out.c_str());
    if (!o.seed_field.empty()) hsl_config_set_string(c, "seed-field", o.seed_field.c_str());
    if (!o.test_hook.empty()) hsl_config_set_string(c, "test-hook", o.test_hook.c_str());
    if (!o.seed.empty() && hsl_config_set_string(c, "seed", o.seed.c_str()) != HSL_OK) {
        return config_error(c, hsl_last_error());
    }
    if (hsl_config_validate(c) != HSL_OK) {
        const std::string what = hsl_last_error();
        std::cerr << sub.help();
        return config_error(c, what);
    }

    hsl_result* r = nullptr;
    const hsl_status status = hsl_run(c, &r);
    hsl_config_free(c);
    if (!r) {
        std::cerr << "error: " << hsl_last_error() << "\n";
        return HSL_SOLVER_FAILURE;
    }
    int code = hsl_result_exit_code(r);
    std::cout << hsl_result_summary(r);
    if (status != HSL_OK && *hsl_result_error(r)) std::cerr << "error: " << hsl_result_error(r) << "\n";
    if (!o.out.empty() && hsl_result_file_count(r) > 0) {
        if (hsl_result_write(r, o.out.c_str()) != HSL_OK) {
            std::cerr << "error: " << hsl_last_error() << "\n";
            code = HSL_SOLVER_FAILURE;
        } else {
            for (std::size_t i = 0; i < hsl_result_file_count(r); ++i) {
                std::cout << "wrote " << o.out << hsl_result_file_suffix(r, i) << "\n";
            }
        }
    }
    hsl_result_free(r);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Neumann eigenfunction laboratory for triangles"};
    app.set_version_flag("--version", hsl_version());
    app.require_subcommand(1);

    Options o;
    o.jobs = default_jobs();
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"solve", "mu2, eigenfunction and property battery for each triangle"},
        {"chain", "inequality chain with certified bounds"},
        {"scan", "property battery over a congruence-reduced angle grid"},
        {"continuation", "follow the second eigenfunction along a path of triangles"},
        {"analytic", "closed-form identities and scans"},
        {"selftest", "solver checks against known spectra"},
    };
    std::vector<CLI::App*> subs;
    for (const auto& [name, help] : commands) {
        CLI::App* s = app.add_subcommand(name, help);
        s->add_option("--triangle,-t", o.triangles, "\"x1,y1;x2,y2;x3,y3\" (repeatable)");
        s->add_option("--levels", o.levels, "refinement levels lo:hi");
        s->add_option("--order", o.order, "finite element order (1 or 2)");
        s->add_option("--grid", o.grid, "scan or analytic grid resolution");
        s->add_option("--steps", o.steps, "continuation steps");
        s->add_option("--out", o.out, "path prefix for report files");
        s->add_option("--jobs,-j", o.jobs, "worker threads (default $HOTSPOTS_LAB_JOBS or 1)");
        s->add_option("--seed", o.seed, "random seed, hexadecimal");
        s->add_option("--tol-grad", o.tol_grad, "critical point gradient tolerance");
        s->add_option("--tol-mono", o.tol_mono, "monotonicity tolerance");
        s->add_option("--tol-vertex", o.tol_vertex, "vertex sign tolerance");
        s->add_option("--seed-field", o.seed_field, "continuation seed triangle");
        s->add_option("--test-hook", o.test_hook)->group("");
        subs.push_back(s);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : HSL_INVALID_CONFIG;
    }
    for (CLI::App* s : subs) {
        if (s->parsed()) return execute(s->get_name(), o, *s);
    }
    return HSL_INVALID_CONFIG;
}
