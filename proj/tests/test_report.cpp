#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "hotspots/error.hpp"
#include "hotspots/report.hpp"

using namespace hotspots;

namespace {

constexpr double pi = std::numbers::pi;
const double nan = std::numeric_limits<double>::quiet_NaN();

Property prop(PropertyVerdict v, double margin = nan) { return {"p", v, margin, 0.0, 0, {}}; }

RunConfig solve_config(const Triangle& t) {
    RunConfig c;
    c.command = "solve";
    c.triangles = {t};
    c.lo = 3;
    c.hi = 5;
    return c;
}

const Triangle kHalfEquilateral({0, 0}, {1, 0}, {0, std::sqrt(3.0)});
const Triangle kScalene({0, 0}, {1, 0}, {0.3, 0.8});

}  // namespace

TEST(Combine, Table) {
    using V = PropertyVerdict;
    EXPECT_EQ(combine(prop(V::pass, 0.1), prop(V::pass, 0.1)), V::pass);
    EXPECT_EQ(combine(prop(V::fail), prop(V::fail)), V::fail);
    EXPECT_EQ(combine(prop(V::pass, 0.1), prop(V::fail, -0.1)), V::unresolved);
    EXPECT_EQ(combine(prop(V::fail, -0.1), prop(V::pass, 0.1)), V::unresolved);
    EXPECT_EQ(combine(prop(V::unresolved), prop(V::pass)), V::unresolved);
    EXPECT_EQ(combine(prop(V::skipped), prop(V::fail)), V::skipped);
    EXPECT_EQ(combine(prop(V::pass), prop(V::skipped)), V::skipped);
}

TEST(Combine, ShrinkingViolationIsUnresolved) {
    using V = PropertyVerdict;
    std::string note;
    EXPECT_EQ(combine(prop(V::fail, -1e-2), prop(V::fail, -5e-3), &note), V::unresolved);
    EXPECT_NE(note.find("shrinks"), std::string::npos);
    EXPECT_EQ(combine(prop(V::fail, -1e-2), prop(V::fail, -6.1e-3)), V::fail);
    EXPECT_EQ(combine(prop(V::fail, -1e-2), prop(V::fail, -2e-2)), V::fail);
}

TEST(Config, JsonRoundTrip) {
    RunConfig c = solve_config(kScalene);
    c.grad_tol = 2.5e-4;
    c.seed = 0xABCDEF;
    c.jobs = 3;
    c.test_hook = "corrupt-mesh";
    const nlohmann::json j = to_json(c);
    const RunConfig d = run_config_from_json(j);
    EXPECT_EQ(to_json(d), j);
    EXPECT_EQ(d.seed, 0xABCDEFu);
    EXPECT_EQ(d.triangles.size(), 1u);
    EXPECT_EQ(d.triangles[0].vertex(2).x1, 0.3);
}

TEST(Config, MissingKeysKeepDefaults) {
    const RunConfig d = run_config_from_json(nlohmann::json{{"command", "selftest"}});
    EXPECT_EQ(d.lo, RunConfig{}.lo);
    EXPECT_EQ(d.hi, RunConfig{}.hi);
    EXPECT_EQ(d.seed, RunConfig{}.seed);
}

TEST(Config, TypeErrorsThrow) {
    EXPECT_THROW(run_config_from_json(nlohmann::json{{"order", "two"}}), Error);
    EXPECT_THROW(run_config_from_json(nlohmann::json{{"seed", "xyz"}}), Error);
    EXPECT_THROW(run_config_from_json(nlohmann::json::array()), Error);
}

TEST(Config, ValidateNamesTheField) {
    auto message = [](const RunConfig& c) {
        try {
            validate(c);
        } catch (const Error& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    RunConfig c = solve_config(kScalene);
    EXPECT_EQ(message(c), "");
    RunConfig bad = c;
    bad.triangles.clear();
    EXPECT_NE(message(bad).find("exactly one triangle"), std::string::npos);
    bad = c;
    bad.hi = bad.lo + 1;
    EXPECT_NE(message(bad).find("levels"), std::string::npos);
    bad = c;
    bad.order = 3;
    EXPECT_NE(message(bad).find("order"), std::string::npos);
    bad = c;
    bad.mono_tol = -1.0;
    EXPECT_NE(message(bad).find("tol-mono"), std::string::npos);
    bad = c;
    bad.command = "frobnicate";
    EXPECT_NE(message(bad).find("unknown command"), std::string::npos);
    bad = c;
    bad.test_hook = "explode";
    EXPECT_NE(message(bad).find("test hook"), std::string::npos);
    bad = c;
    bad.command = "continuation";
    bad.seed_field = "nope";
    EXPECT_FALSE(message(bad).empty());
}

TEST(Run, InvalidConfigIsExitTwo) {
    RunConfig c = solve_config(kScalene);
    c.triangles.clear();
    const RunResult r = run(c);
    EXPECT_EQ(r.code, ExitCode::invalid_config);
    EXPECT_FALSE(r.error.empty());
}

TEST(Run, SolveHalfEquilateral) {
    RunConfig c = solve_config(kHalfEquilateral);
    c.hi = 6;
    const RunResult r = run(c);
    ASSERT_EQ(r.code, ExitCode::ok) << r.error;
    const auto& res = r.report.at("result");
    EXPECT_NEAR(res.at("mu2").at("extrapolated").get<double>(), 4 * pi * pi / 9, 1e-7);
    EXPECT_EQ(res.at("verdict"), "pass");
    EXPECT_EQ(r.report.at("schema_version"), kSchemaVersion);
    ASSERT_EQ(r.files.size(), 3u);
    EXPECT_EQ(r.files[0].suffix, ".json");
    EXPECT_EQ(r.files[1].suffix, ".nodal.csv");
    EXPECT_EQ(r.files[2].suffix, ".gradient.csv");
    EXPECT_EQ(r.files[2].contents.rfind("x1,x2,u,du_dx1,du_dx2\n", 0), 0u);
}

TEST(Run, Deterministic) {
    RunConfig c = solve_config(kScalene);
    const RunResult a = run(c), b = run(c);
    ASSERT_EQ(a.files.size(), b.files.size());
    for (std::size_t i = 0; i < a.files.size(); ++i) EXPECT_EQ(a.files[i].contents, b.files[i].contents);
}

TEST(Run, ScanIsIndependentOfJobs) {
    RunConfig c;
    c.command = "scan";
    c.grid = 7;
    c.lo = 2;
    c.hi = 4;
    const RunResult serial = run(c);
    c.jobs = 3;
    const RunResult parallel = run(c);
    ASSERT_EQ(serial.code, parallel.code);
    // the config echo differs in "jobs"
    EXPECT_EQ(serial.files[1].contents, parallel.files[1].contents);
    EXPECT_EQ(serial.report.at("result"), parallel.report.at("result"));
}

TEST(Run, ScanGridIsCongruenceReduced) {
    RunConfig c;
    c.command = "scan";
    c.grid = 9;
    c.lo = 2;
    c.hi = 4;
    const RunResult r = run(c);
    // partitions of 9 into three positive parts
    EXPECT_EQ(r.report.at("result").at("triangles"), 7);
    std::istringstream csv(r.files[1].contents);
    std::string line;
    int rows = -1;
    while (std::getline(csv, line)) ++rows;
    EXPECT_EQ(rows, 7);
}

TEST(Run, PlantedInteriorMaxIsAnomaly) {
    RunConfig c;
    c.command = "scan";
    c.grid = 6;
    c.lo = 2;
    c.hi = 4;
    c.test_hook = "plant-interior-max";
    const RunResult r = run(c);
    EXPECT_EQ(r.code, ExitCode::anomaly);
    const auto& row0 = r.report.at("result").at("rows").at(0).at("report");
    EXPECT_EQ(row0.at("verdict"), "anomaly");
    c.test_hook.clear();
    EXPECT_EQ(run(c).code, ExitCode::ok);
}

TEST(Run, CorruptMeshIsSolverFailure) {
    RunConfig c = solve_config(kScalene);
    c.test_hook = "corrupt-mesh";
    const RunResult r = run(c);
    EXPECT_EQ(r.code, ExitCode::solver_failure);
    EXPECT_NE(r.error.find("not positively oriented"), std::string::npos);
}

TEST(Run, EquilateralIsNotAnAnomaly) {
    const RunResult r = run(solve_config(Triangle({0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2})));
    EXPECT_EQ(r.code, ExitCode::ok);
    EXPECT_TRUE(r.report.at("result").at("numerically_multiple").get<bool>());
}

TEST(Run, ChainOnScalene) {
    RunConfig c;
    c.command = "chain";
    c.triangles = {kScalene};
    c.lo = 2;
    c.hi = 4;
    const RunResult r = run(c);
    EXPECT_EQ(r.code, ExitCode::ok) << r.summary;
    EXPECT_EQ(r.report.at("result").at("triangles").size(), 1u);
}

TEST(Run, ContinuationWritesJsonLines) {
    RunConfig c;
    c.command = "continuation";
    c.triangles = {Triangle({0, 0}, {1, 0}, {0.3, 0.8})};
    c.lo = 2;
    c.hi = 4;
    c.steps = 4;
    const RunResult r = run(c);
    ASSERT_NE(r.code, ExitCode::solver_failure) << r.error;
    ASSERT_GE(r.files.size(), 2u);
    EXPECT_EQ(r.files[1].suffix, ".jsonl");
    std::istringstream in(r.files[1].contents);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        EXPECT_NO_THROW(static_cast<void>(nlohmann::json::parse(line)));
        ++n;
    }
    EXPECT_GE(n, 5);
}

TEST(Output, WritesEveryFile) {
    RunResult r;
    r.files = {{".a", "one"}, {".b", "two"}};
    const auto dir = std::filesystem::temp_directory_path() / "hotspots_report_test";
    std::filesystem::create_directories(dir);
    const std::string prefix = (dir / "x").string();
    write_outputs(r, prefix);
    std::ifstream a(prefix + ".a"), b(prefix + ".b");
    std::string sa, sb;
    a >> sa;
    b >> sb;
    EXPECT_EQ(sa, "one");
    EXPECT_EQ(sb, "two");
    std::filesystem::remove_all(dir);
    EXPECT_THROW(write_outputs(r, "/nonexistent-dir/x"), Error);
}

TEST(Output, FormatDoubleRoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, pi, 1e-300, -2.5e17}) EXPECT_EQ(std::stod(format_double(v)), v);
}
