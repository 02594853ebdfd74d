#include "hotspots/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>

#include "hotspots/analytic.hpp"
#include "hotspots/continuation.hpp"
#include "hotspots/error.hpp"
#include "hotspots/mesh.hpp"
#include "hotspots/sampling.hpp"
#include "hotspots/special_functions.hpp"

namespace hotspots {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kShrinkRatio = 0.6;

nlohmann::json point_json(Point2 p) { return {p.x1, p.x2}; }

nlohmann::json triangle_json(const Triangle& t) {
    return {point_json(t.vertex(0)), point_json(t.vertex(1)), point_json(t.vertex(2))};
}

Triangle triangle_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::invalid_argument, "triangle needs three vertices");
    std::array<Point2, 3> z;
    for (int k = 0; k < 3; ++k) {
        if (!j[k].is_array() || j[k].size() != 2) throw Error(ErrorCode::invalid_argument, "vertex needs two coordinates");
        z[k] = {j[k][0].get<double>(), j[k][1].get<double>()};
    }
    return Triangle(z[0], z[1], z[2]);
}

std::string hex(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(v));
    return buf;
}

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

nlohmann::json estimate_json(const EigenEstimate& e) {
    nlohmann::json levels = nlohmann::json::array();
    for (const LevelValue& v : e.per_level) levels.push_back({{"level", v.level}, {"value", v.value}});
    return {{"extrapolated", e.extrapolated},
            {"error_bar", e.error_bar},
            {"observed_order", finite_or_null(e.observed_order)},
            {"reliable", e.reliable},
            {"order_flag", e.order_flag},
            {"per_level", levels}};
}

// Runs fn(0..n-1) on `jobs` threads; the first exception is rethrown after all finish.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
    const int workers = std::max(1, std::min(jobs, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

EigenField planted_field(const NeumannResult& r) {
    const Triangle& t = *r.mesh.domain;
    const Point2 c = t.centroid();
    const double s = 0.2 * t.diameter();
    Eigen::VectorXd u(r.mesh.node_count());
    for (int i = 0; i < r.mesh.node_count(); ++i) {
        const Point2 d = r.mesh.nodes[i] - c;
        u[i] = std::exp(-dot(d, d) / (s * s)) - 0.5;
    }
    return make_field(r.mesh, std::move(u), r.mu2);
}

std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

std::string csv_field(std::string s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

RunResult finish(const RunConfig& c, nlohmann::json result, ExitCode code) {
    RunResult r;
    r.code = code;
    r.report = {{"schema_version", kSchemaVersion},
                {"command", c.command},
                {"config", to_json(c)},
                {"exit_code", static_cast<int>(code)},
                {"result", std::move(result)}};
    r.files.push_back({".json", dump(r.report)});
    return r;
}

LabOptions lab_options(const RunConfig& c) {
    LabOptions o;
    o.order = c.order;
    o.hi = c.hi;
    o.lo = c.hi - 2;
    o.escalate_to = c.hi + 1;
    o.solver = c.solver();
    return o;
}

// ---- commands

RunResult cmd_solve(const RunConfig& c) {
    const TriangleReport rep = analyze_triangle(c.triangles[0], c, c.test_hook == "plant-interior-max");
    RunResult r = finish(c, to_json(rep), rep.verdict == "anomaly" ? ExitCode::anomaly : ExitCode::ok);
    r.files.push_back({".nodal.csv", nodal_csv(rep.fine->nodal)});
    r.files.push_back({".gradient.csv", gradient_csv(*rep.field)});
    char line[256];
    std::snprintf(line, sizeof line, "mu2 = %.12g +- %.2g  pattern %s  %s\n", rep.mu2.extrapolated,
                  rep.mu2.error_bar, rep.fine->sign_pattern.c_str(), rep.verdict.c_str());
    r.summary = line;
    for (const std::string& a : rep.anomalies) r.summary += "  anomaly: " + a + "\n";
    return r;
}

RunResult cmd_chain(const RunConfig& c) {
    const LabOptions opt = lab_options(c);
    std::vector<std::optional<InequalityReport>> reps(c.triangles.size());
    parallel_for(static_cast<int>(c.triangles.size()), c.jobs,
                 [&](int i) { reps[i] = inequality_battery(c.triangles[i], opt); });
    nlohmann::json out = nlohmann::json::array();
    bool violated = false;
    std::string summary;
    for (const auto& rep : reps) {
        out.push_back(to_json(*rep));
        violated |= rep->any_violated();
        summary += format_triangle_literal(rep->triangle) + ": " + std::to_string(rep->count(Verdict::strict)) +
                   " strict, " + std::to_string(rep->count(Verdict::equal)) + " equal, " +
                   std::to_string(rep->count(Verdict::inconclusive)) + " inconclusive, " +
                   std::to_string(rep->count(Verdict::violated)) + " violated\n";
    }
    RunResult r = finish(c, {{"triangles", out}}, violated ? ExitCode::anomaly : ExitCode::ok);
    r.summary = summary;
    return r;
}

struct GridPoint {
    int i, j, k;
};

// Angle triples (i, j, k) pi / N with i >= j >= k >= 1, one per congruence class.
std::vector<GridPoint> scan_grid(int n) {
    std::vector<GridPoint> out;
    for (int i = n - 2; i >= 1; --i) {
        for (int j = std::min(i, n - i - 1); j >= 1; --j) {
            const int k = n - i - j;
            if (k >= 1 && k <= j) out.push_back({i, j, k});
        }
    }
    return out;
}

RunResult cmd_scan(const RunConfig& c) {
    const std::vector<GridPoint> grid = scan_grid(c.grid);
    const int n = static_cast<int>(grid.size());
    const bool plant = c.test_hook == "plant-interior-max";
    std::vector<std::optional<TriangleReport>> reps(n);
    std::vector<std::string> failures(n);
    parallel_for(n, c.jobs, [&](int idx) {
        const GridPoint& g = grid[idx];
        const bool planted = plant && idx == 0;
        // the planted triangle is forced obtuse
        const Triangle t = planted ? triangle_from_angles(2.0, 0.6)
                                   : triangle_from_angles(pi * g.i / c.grid, pi * g.j / c.grid);
        try {
            reps[idx] = analyze_triangle(t, c, planted);
        } catch (const Error& e) {
            failures[idx] = e.what();
        }
    });

    std::ostringstream csv;
    csv << "index,i,j,k,angle_z1,angle_z2,angle_z3,mu2,mu2_error,gap,sign_pattern,census,verdict,failures\n";
    nlohmann::json rows = nlohmann::json::array();
    int anomalies = 0, inconclusive = 0, failed = 0;
    for (int idx = 0; idx < n; ++idx) {
        const GridPoint& g = grid[idx];
        nlohmann::json row{{"index", idx}, {"grid", {g.i, g.j, g.k}}};
        if (!reps[idx]) {
            ++failed;
            row["failure"] = failures[idx];
            rows.push_back(row);
            csv << idx << ',' << g.i << ',' << g.j << ',' << g.k << ",,,,,,,,," << csv_field("failed: " + failures[idx]) << '\n';
            continue;
        }
        const TriangleReport& r = *reps[idx];
        row["report"] = to_json(r);
        rows.push_back(row);
        anomalies += r.verdict == "anomaly";
        inconclusive += r.verdict == "inconclusive";
        const Triangle& t = r.triangle;
        csv << idx << ',' << g.i << ',' << g.j << ',' << g.k << ',' << format_double(t.angle(VertexId::z1)) << ','
            << format_double(t.angle(VertexId::z2)) << ',' << format_double(t.angle(VertexId::z3)) << ','
            << format_double(r.mu2.extrapolated) << ',' << format_double(r.mu2.error_bar) << ','
            << format_double(r.gap) << ',' << r.fine->sign_pattern << ',' << csv_field(r.fine->census) << ','
            << r.verdict << ',' << csv_field(join(r.anomalies, "; ")) << '\n';
    }
    nlohmann::json result{{"grid", c.grid},
                          {"triangles", n},
                          {"anomalies", anomalies},
                          {"inconclusive", inconclusive},
                          {"failed", failed},
                          {"rows", rows}};
    const ExitCode code = failed ? ExitCode::solver_failure : anomalies ? ExitCode::anomaly : ExitCode::ok;
    RunResult r = finish(c, std::move(result), code);
    r.files.push_back({".csv", csv.str()});
    r.summary = std::to_string(n) + " triangles: " + std::to_string(n - anomalies - inconclusive - failed) +
                " pass, " + std::to_string(inconclusive) + " inconclusive, " + std::to_string(anomalies) +
                " anomaly, " + std::to_string(failed) + " failed\n";
    for (int idx = 0; idx < n; ++idx) {
        if (reps[idx] && reps[idx]->verdict == "anomaly") {
            r.summary += "  " + format_triangle_literal(reps[idx]->triangle) + ": " + join(reps[idx]->anomalies, "; ") + "\n";
        }
    }
    return r;
}

RunResult cmd_continuation(const RunConfig& c) {
    const SeedField seed = seed_field(c.seed_field);
    ContinuationOptions opt;
    opt.steps = c.steps;
    opt.level = c.hi;
    opt.order = c.order;
    opt.analysis = c.analysis();
    opt.solver = c.solver();
    const ContinuationTrace tr = trace(seed.triangle, c.triangles[0], opt);

    std::string jsonl;
    bool failed = false, anomaly = false;
    nlohmann::json flagged = nlohmann::json::array(), changes = nlohmann::json::array();
    for (std::size_t k = 0; k < tr.steps.size(); ++k) {
        const ContinuationStepReport& s = tr.steps[k];
        jsonl += to_json(s).dump() + "\n";
        failed |= s.failed;
        for (const std::string& a : s.anomalies) {
            // multiplicity is inconclusive rather than a property violation
            if (!s.numerically_multiple) anomaly = true;
            flagged.push_back({{"step", k}, {"t", s.t}, {"anomaly", a}});
        }
        for (const SignChange& ch : s.sign_changes) {
            changes.push_back({{"margin", ch.margin}, {"t", {ch.t_lo, ch.t_hi}}});
        }
    }
    nlohmann::json result{{"seed", seed.name},
                          {"seed_eigenvalue", seed.eigenvalue},
                          {"start", triangle_json(tr.start)},
                          {"target", triangle_json(tr.target)},
                          {"steps", c.steps},
                          {"level", c.hi},
                          {"anomaly_steps", tr.anomaly_steps()},
                          {"multiple_steps", tr.multiple_steps()},
                          {"flags", flagged},
                          {"sign_changes", changes}};
    if (!tr.steps.empty() && !tr.steps[0].failed) {
        result["seed_relative_error"] = std::abs(tr.steps[0].mu2 - seed.eigenvalue) / seed.eigenvalue;
    }
    const ExitCode code = failed ? ExitCode::solver_failure : anomaly ? ExitCode::anomaly : ExitCode::ok;
    RunResult r = finish(c, std::move(result), code);
    r.files.push_back({".jsonl", jsonl});
    r.summary = std::to_string(tr.steps.size()) + " steps, " + std::to_string(tr.anomaly_steps()) +
                " flagged, multiple at [";
    for (int k : tr.multiple_steps()) r.summary += " " + std::to_string(k);
    r.summary += " ]\n";
    for (const auto& f : flagged) {
        r.summary += "  step " + std::to_string(f["step"].get<int>()) + ": " + f["anomaly"].get<std::string>() + "\n";
    }
    return r;
}

struct NamedCheck {
    std::string name;
    bool pass;
    nlohmann::json detail;
};

RunResult cmd_analytic(const RunConfig& c) {
    std::vector<NamedCheck> checks;
    auto identity = [&](const IdentityVerdict& v) {
        checks.push_back({v.name, v.pass,
                          {{"mismatch_index", v.mismatch_index}, {"lhs", v.lhs.to_string()}, {"rhs", v.rhs.to_string()}}});
    };
    identity(positivity_identity());
    identity(discriminant_identity());
    const SampledIdentity sampled = sqrt10_identity_sampled();
    checks.push_back({"sqrt10 factorization (sampled)", sampled.pass,
                      {{"samples", sampled.samples}, {"max_error", sampled.max_error}}});

    const ScanResult fs = F_scan(512, 1e-4);
    checks.push_back({"F > 1 on the F region", fs.min_value > 1.0,
                      {{"min", fs.min_value}, {"beta", fs.arg1}, {"gamma", fs.arg2}, {"samples", fs.samples}}});
    const BoundaryCurve bc = boundary_curve();
    const double constant = boundary_constant();
    checks.push_back({"boundary constant 25 sqrt5 pi / (96 sqrt3)",
                      std::abs(bc.factorized_bound - constant) < 1e-6 && bc.true_min >= bc.factorized_bound,
                      {{"constant", constant},
                       {"factorized_bound", bc.factorized_bound},
                       {"true_min", bc.true_min},
                       {"true_argmin", bc.true_argmin}}});
    const ScanResult c1 = Fcal_scan(400, 1e-4);
    checks.push_back({"Fcal > 1 for s >= 1", c1.min_value > 1.0, {{"min", c1.min_value}, {"s", c1.arg1}, {"t", c1.arg2}}});
    std::vector<double> ts;
    for (int k = 1; k <= 9; ++k) ts.push_back(0.1 * k);
    bool patterns_ok = true;
    nlohmann::json patterns = nlohmann::json::array();
    for (const SignPattern& p : Fcal_slope_scan(ts)) {
        patterns_ok &= p.ok;
        patterns.push_back({{"t", p.t}, {"pattern", p.pattern}});
    }
    checks.push_back({"d/ds Fcal changes sign at most once", patterns_ok, patterns});
    const ThresholdCheck th = golden_threshold();
    checks.push_back({"2 cos(pi/5) < 2 j01 / pi", th.holds, {{"lhs", th.lhs}, {"rhs", th.rhs}}});
    const double j = j01();
    checks.push_back({"j01", std::abs(j - 2.404825557695773) <= 1e-12, {{"value", j}}});

    nlohmann::json out = nlohmann::json::array();
    bool all = true;
    std::string summary;
    for (const NamedCheck& k : checks) {
        all &= k.pass;
        out.push_back({{"name", k.name}, {"pass", k.pass}, {"detail", k.detail}});
        summary += std::string(k.pass ? "pass  " : "FAIL  ") + k.name + "\n";
    }
    RunResult r = finish(c, {{"checks", out}}, all ? ExitCode::ok : ExitCode::anomaly);

    std::vector<ScanRow> rows;
    F_scan(std::max(c.grid, 2), 1e-4, &rows);
    std::ostringstream csv;
    csv << "beta,gamma,F\n";
    for (const ScanRow& row : rows) {
        csv << format_double(row.arg1) << ',' << format_double(row.arg2) << ',' << format_double(row.value) << '\n';
    }
    r.files.push_back({".csv", csv.str()});
    r.summary = summary;
    return r;
}

RunResult cmd_selftest(const RunConfig& c) {
    const SolverOptions so = c.solver();
    const int lo = 3, hi = std::clamp(c.hi, 5, 6);
    const Triangle half_eq({0, 0}, {1, 0}, {0, std::sqrt(3.0)});
    const Triangle right_iso({0, 0}, {1, 0}, {0, 1});
    const Triangle equi({0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2});
    struct Case {
        std::string name;
        std::function<EigenEstimate()> estimate;
        double exact;
    };
    const std::vector<Case> cases{
        {"mu2 half-equilateral = 4 pi^2 / 9", [&] { return neumann_estimate(half_eq, lo, hi, 2, so); }, 4 * pi * pi / 9},
        {"mu2 isosceles right = pi^2", [&] { return neumann_estimate(right_iso, lo, hi, 2, so); }, pi * pi},
        {"mu2 equilateral = 16 pi^2 / 9", [&] { return neumann_estimate(equi, lo, hi, 2, so); }, 16 * pi * pi / 9},
        {"lambda1 right isosceles, Dirichlet hypotenuse = pi^2",
         [&] { return mixed_estimate(right_iso, BoundarySpec::dirichlet_on({SideId::z2z3}), lo, hi, 2, so); }, pi * pi},
        {"lambda1 right isosceles, Dirichlet = 5 pi^2",
         [&] { return mixed_estimate(right_iso, BoundarySpec::all_dirichlet(), lo, hi, 2, so); }, 5 * pi * pi},
    };
    std::vector<std::optional<EigenEstimate>> est(cases.size());
    parallel_for(static_cast<int>(cases.size()), c.jobs, [&](int i) { est[i] = cases[i].estimate(); });

    nlohmann::json out = nlohmann::json::array();
    bool all = true;
    std::string summary;
    char line[256];
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const double rel = std::abs(est[i]->extrapolated - cases[i].exact) / cases[i].exact;
        const bool ok = rel < 1e-5;
        all &= ok;
        out.push_back({{"name", cases[i].name},
                       {"pass", ok},
                       {"exact", cases[i].exact},
                       {"relative_error", rel},
                       {"estimate", estimate_json(*est[i])}});
        std::snprintf(line, sizeof line, "%s  %s  rel err %.2e\n", ok ? "pass" : "FAIL", cases[i].name.c_str(), rel);
        summary += line;
    }
    // P2 convergence order from the half-equilateral sequence
    const EigenEstimate& he = *est[0];
    const bool order_ok = std::isfinite(he.observed_order) && std::abs(he.observed_order - 4.0) <= 0.5;
    all &= order_ok;
    out.push_back({{"name", "P2 observed order 4 +- 0.5"}, {"pass", order_ok}, {"observed_order", finite_or_null(he.observed_order)}});
    std::snprintf(line, sizeof line, "%s  P2 observed order %.3f\n", order_ok ? "pass" : "FAIL", he.observed_order);
    summary += line;
    const bool j_ok = std::abs(j01() - 2.404825557695773) <= 1e-12;
    all &= j_ok;
    out.push_back({{"name", "j01"}, {"pass", j_ok}, {"value", j01()}});
    summary += std::string(j_ok ? "pass" : "FAIL") + "  j01\n";

    RunResult r = finish(c, {{"levels", {lo, hi}}, {"checks", out}}, all ? ExitCode::ok : ExitCode::anomaly);
    r.summary = summary;
    return r;
}

}  // namespace

// ---- configuration

AnalysisOptions RunConfig::analysis() const {
    AnalysisOptions a;
    a.grad_tol = grad_tol;
    a.mono_tol = mono_tol;
    a.vertex_tol = vertex_tol;
    return a;
}

SolverOptions RunConfig::solver() const {
    SolverOptions s;
    s.tol = solver_tol;
    s.max_iterations = max_iterations;
    s.seed = seed;
    return s;
}

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"solve", "chain", "scan", "continuation", "analytic", "selftest"};
    return names;
}

void validate(const RunConfig& c) {
    auto bad = [](const std::string& what) { throw Error(ErrorCode::invalid_argument, what); };
    const auto& names = command_names();
    if (std::find(names.begin(), names.end(), c.command) == names.end()) bad("unknown command '" + c.command + "'");
    if ((c.command == "solve" || c.command == "continuation") && c.triangles.size() != 1) {
        bad(c.command + " needs exactly one triangle");
    }
    if (c.command == "chain" && c.triangles.empty()) bad("chain needs at least one triangle");
    if (c.lo < 1) bad("levels: lowest level must be at least 1");
    if (c.hi < c.lo + 2) bad("levels: Richardson extrapolation needs at least three levels (lo:hi with hi >= lo + 2)");
    if (c.hi > 9) bad("levels: highest level is 9");
    if (c.order != 1 && c.order != 2) bad("order must be 1 or 2");
    for (auto [name, v] : {std::pair{"tol-grad", c.grad_tol}, {"tol-mono", c.mono_tol}, {"tol-vertex", c.vertex_tol},
                           {"solver tolerance", c.solver_tol}}) {
        if (!(v > 0) || !std::isfinite(v)) bad(std::string(name) + " must be positive");
    }
    if (c.max_iterations < 1) bad("max iterations must be positive");
    if (c.grid < 3 || c.grid > 200) bad("grid must be in [3, 200]");
    if (c.steps < 1 || c.steps > 10000) bad("steps must be in [1, 10000]");
    if (c.jobs < 1) bad("jobs must be positive");
    if (!c.test_hook.empty() && c.test_hook != "corrupt-mesh" && c.test_hook != "plant-interior-max") {
        bad("unknown test hook '" + c.test_hook + "'");
    }
    if (c.command == "continuation") seed_field(c.seed_field);
}

nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json tris = nlohmann::json::array();
    for (const Triangle& t : c.triangles) tris.push_back(triangle_json(t));
    nlohmann::json j{{"command", c.command},
                     {"triangles", tris},
                     {"levels", {c.lo, c.hi}},
                     {"order", c.order},
                     {"tolerances", {{"grad", c.grad_tol}, {"mono", c.mono_tol}, {"vertex", c.vertex_tol}}},
                     {"solver", {{"tol", c.solver_tol}, {"max_iterations", c.max_iterations}}},
                     {"grid", c.grid},
                     {"steps", c.steps},
                     {"seed_field", c.seed_field},
                     {"out", c.out},
                     {"jobs", c.jobs},
                     {"seed", hex(c.seed)}};
    if (!c.test_hook.empty()) j["test_hook"] = c.test_hook;
    return j;
}

RunConfig run_config_from_json(const nlohmann::json& j) {
    RunConfig c;
    try {
        if (!j.is_object()) throw Error(ErrorCode::invalid_argument, "config must be a JSON object");
        c.command = j.value("command", c.command);
        if (j.contains("triangles")) {
            for (const auto& t : j.at("triangles")) c.triangles.push_back(triangle_from_json(t));
        }
        if (j.contains("levels")) {
            c.lo = j.at("levels").at(0).get<int>();
            c.hi = j.at("levels").at(1).get<int>();
        }
        c.order = j.value("order", c.order);
        if (j.contains("tolerances")) {
            const auto& t = j.at("tolerances");
            c.grad_tol = t.value("grad", c.grad_tol);
            c.mono_tol = t.value("mono", c.mono_tol);
            c.vertex_tol = t.value("vertex", c.vertex_tol);
        }
        if (j.contains("solver")) {
            c.solver_tol = j.at("solver").value("tol", c.solver_tol);
            c.max_iterations = j.at("solver").value("max_iterations", c.max_iterations);
        }
        c.grid = j.value("grid", c.grid);
        c.steps = j.value("steps", c.steps);
        c.seed_field = j.value("seed_field", c.seed_field);
        c.out = j.value("out", c.out);
        c.jobs = j.value("jobs", c.jobs);
        if (j.contains("seed")) {
            const std::string s = j.at("seed").get<std::string>();
            std::size_t used = 0;
            c.seed = std::stoull(s, &used, 16);
            if (used != s.size()) throw Error(ErrorCode::invalid_argument, "seed must be hexadecimal");
        }
        c.test_hook = j.value("test_hook", c.test_hook);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::invalid_argument, std::string("config: ") + e.what());
    } catch (const std::logic_error& e) {
        throw Error(ErrorCode::invalid_argument, std::string("config: ") + e.what());
    }
    return c;
}

// ---- per-triangle report

PropertyVerdict combine(const Property& coarse, const Property& fine, std::string* note) {
    auto say = [&](const char* s) {
        if (note) *note = s;
    };
    if (coarse.verdict == PropertyVerdict::skipped || fine.verdict == PropertyVerdict::skipped) {
        return PropertyVerdict::skipped;
    }
    if (coarse.verdict == PropertyVerdict::pass && fine.verdict == PropertyVerdict::pass) return PropertyVerdict::pass;
    if (coarse.verdict == PropertyVerdict::fail && fine.verdict == PropertyVerdict::fail) {
        if (std::isfinite(coarse.margin) && std::isfinite(fine.margin) &&
            std::abs(fine.margin) <= kShrinkRatio * std::abs(coarse.margin)) {
            say("violation shrinks under refinement");
            return PropertyVerdict::unresolved;
        }
        return PropertyVerdict::fail;
    }
    if (coarse.verdict == PropertyVerdict::unresolved || fine.verdict == PropertyVerdict::unresolved) {
        say("unresolved at one level");
        return PropertyVerdict::unresolved;
    }
    say("holds at one level only");
    return PropertyVerdict::unresolved;
}

TriangleReport analyze_triangle(const Triangle& t, const RunConfig& c, bool plant_interior_max) {
    TriangleReport rep{t, canonicalize(t).triangle};
    const Triangle& T = rep.triangle;
    rep.cls = classify(T);
    const SolverOptions so = c.solver();

    std::vector<LevelValue> values;
    std::optional<NeumannResult> prev, coarse, fine;
    for (int level = c.lo; level <= c.hi; ++level) {
        Mesh m = estimate_mesh(T, level, c.order);
        if (c.test_hook == "corrupt-mesh" && level == c.lo) std::swap(m.elements[0][1], m.elements[0][2]);
        NeumannResult r = neumann_mu2(m, so, prev ? &*prev : nullptr);
        values.push_back({level, r.mu2});
        if (level >= c.hi - 1 && !r.mesh.up_element.empty()) (level == c.hi ? fine : coarse) = r;
        prev = std::move(r);
    }
    rep.mu2 = richardson(values, 2.0 * c.order);
    // split estimate meshes do not support field analysis; re-solve on the lattice
    if (!coarse) coarse = neumann_mu2(T, c.hi - 1, c.order, so);
    if (!fine) fine = neumann_mu2(T, c.hi, c.order, so, &*coarse);
    rep.mu3 = fine->mu3;
    rep.gap = fine->gap;
    rep.coarse_gap = coarse->gap;
    const std::array<double, 2> gaps{coarse->gap, fine->gap}, mus{coarse->mu2, fine->mu2};
    rep.multiple = numerically_multiple(gaps, mus);

    const AnalysisOptions ao = c.analysis();
    EigenField fc = plant_interior_max ? planted_field(*coarse) : make_field(*coarse, ao.vertex_tol);
    EigenField ff = plant_interior_max ? planted_field(*fine) : make_field(*fine, ao.vertex_tol);
    rep.coarse = property_battery(fc, ao);
    rep.fine = property_battery(ff, ao);
    rep.field = std::make_shared<const EigenField>(std::move(ff));

    bool unresolved = false;
    for (const Property& pf : rep.fine->properties) {
        const Property* pc = rep.coarse->property(pf.name);
        Property p = pf;
        std::string note;
        p.verdict = pc ? combine(*pc, pf, &note) : PropertyVerdict::unresolved;
        if (rep.multiple && p.verdict != PropertyVerdict::skipped) {
            p.verdict = PropertyVerdict::unresolved;
            note = "numerically multiple eigenvalue";
        }
        if (!note.empty()) p.detail = p.detail.empty() ? note : note + "; " + p.detail;
        if (p.verdict == PropertyVerdict::fail) rep.anomalies.push_back(p.name + (pf.detail.empty() ? "" : ": " + pf.detail));
        unresolved |= p.verdict == PropertyVerdict::unresolved;
        rep.properties.push_back(std::move(p));
    }
    rep.verdict = !rep.anomalies.empty() ? "anomaly" : unresolved ? "inconclusive" : "pass";
    return rep;
}

nlohmann::json to_json(const TriangleReport& r) {
    nlohmann::json props = nlohmann::json::array();
    for (const Property& p : r.properties) props.push_back(to_json(p));
    return {{"input", triangle_json(r.input)},
            {"triangle", triangle_json(r.triangle)},
            {"class", {{"angle", to_string(r.cls.angle_class)}, {"symmetry", to_string(r.cls.symmetry_class)}}},
            {"angles", {r.triangle.angle(VertexId::z1), r.triangle.angle(VertexId::z2), r.triangle.angle(VertexId::z3)}},
            {"mu2", estimate_json(r.mu2)},
            {"mu3", r.mu3},
            {"gap", r.gap},
            {"coarse_gap", r.coarse_gap},
            {"numerically_multiple", r.multiple},
            {"verdict", r.verdict},
            {"anomalies", r.anomalies},
            {"properties", props},
            {"levels", {to_json(*r.coarse), to_json(*r.fine)}}};
}

// ---- inequality reports

nlohmann::json to_json(const Bounded& b) { return {{"value", b.value}, {"error", b.error}, {"level", b.level}}; }

nlohmann::json to_json(const Check& c) {
    nlohmann::json j{{"name", c.name},
                     {"verdict", to_string(c.verdict)},
                     {"margin", finite_or_null(c.margin)},
                     {"lhs", to_json(c.lhs)},
                     {"rhs", to_json(c.rhs)},
                     {"tolerance", c.lhs.error + c.rhs.error},
                     {"level", std::max(c.lhs.level, c.rhs.level)}};
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

nlohmann::json to_json(const InequalityReport& r) {
    nlohmann::json est = nlohmann::json::object();
    for (std::size_t k = 0; k < kChainKeys.size(); ++k) est[kChainKeys[k]] = to_json(r.chain.estimates[k]);
    nlohmann::json chain = nlohmann::json::array();
    for (const Check& c : r.chain.verdicts) chain.push_back(to_json(c));
    nlohmann::json checks = nlohmann::json::array();
    for (const Check& c : r.checks) checks.push_back(to_json(c));
    return {{"triangle", triangle_json(r.triangle)},
            {"mu2", to_json(r.mu2)},
            {"estimates", est},
            {"chain", chain},
            {"checks", checks},
            {"suggestions", r.chain.suggestions},
            {"counts",
             {{"strict", r.count(Verdict::strict)},
              {"equal", r.count(Verdict::equal)},
              {"inconclusive", r.count(Verdict::inconclusive)},
              {"violated", r.count(Verdict::violated)},
              {"skipped", r.count(Verdict::skipped)}}}};
}

// ---- plot files

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string nodal_csv(const NodalLine& nl) {
    std::ostringstream out;
    out << "component,x1,x2\n";
    for (std::size_t k = 0; k < nl.components.size(); ++k) {
        for (Point2 p : nl.components[k]) out << k << ',' << format_double(p.x1) << ',' << format_double(p.x2) << '\n';
    }
    return out.str();
}

std::string gradient_csv(const EigenField& f) {
    std::ostringstream out;
    out << "x1,x2,u,du_dx1,du_dx2\n";
    const Mesh& m = *f.mesh;
    for (int e = 0; e < m.element_count(); ++e) {
        const auto& el = m.elements[e];
        const Point2 c = (1.0 / 3.0) * (m.nodes[el[0]] + m.nodes[el[1]] + m.nodes[el[2]]);
        const auto u = f.value(c);
        const auto g = f.grad(c);
        if (!u || !g) continue;
        out << format_double(c.x1) << ',' << format_double(c.x2) << ',' << format_double(*u) << ','
            << format_double(g->x1) << ',' << format_double(g->x2) << '\n';
    }
    return out.str();
}

// ---- entry point

RunResult run(const RunConfig& c) {
    try {
        validate(c);
    } catch (const std::exception& e) {
        RunResult r;
        r.code = ExitCode::invalid_config;
        r.error = e.what();
        return r;
    }
    try {
        if (c.command == "solve") return cmd_solve(c);
        if (c.command == "chain") return cmd_chain(c);
        if (c.command == "scan") return cmd_scan(c);
        if (c.command == "continuation") return cmd_continuation(c);
        if (c.command == "analytic") return cmd_analytic(c);
        return cmd_selftest(c);
    } catch (const std::exception& e) {
        RunResult r;
        r.code = ExitCode::solver_failure;
        r.error = e.what();
        return r;
    }
}

void write_outputs(const RunResult& r, const std::string& prefix) {
    for (const OutputFile& f : r.files) {
        const std::string path = prefix + f.suffix;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error(ErrorCode::io_error, "cannot open " + path + " for writing");
        out << f.contents;
        if (!out) throw Error(ErrorCode::io_error, "write failed for " + path);
    }
}

}  // namespace hotspots
