#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hotspots/battery.hpp"
#include "hotspots/eigensolve.hpp"
#include "hotspots/geometry.hpp"
#include "hotspots/inequality.hpp"
#include "hotspots/spectral.hpp"

namespace hotspots {

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
    std::string command;  // solve, chain, scan, continuation, analytic, selftest
    std::vector<Triangle> triangles;
    int lo = 4;
    int hi = 6;
    int order = 2;
    double grad_tol = 1e-3;
    double mono_tol = 1e-6;
    double vertex_tol = 1e-6;
    double solver_tol = 1e-9;
    int max_iterations = 400;
    int grid = 20;
    int steps = 32;
    std::string seed_field = "half_equilateral";
    std::string out;  // path prefix for report files; empty writes nothing
    int jobs = 1;
    std::uint64_t seed = 0x5EED;
    std::string test_hook;  // "corrupt-mesh" or "plant-interior-max"

    AnalysisOptions analysis() const;
    SolverOptions solver() const;
};

const std::vector<std::string>& command_names();
// Throws Error(invalid_argument) naming the offending field.
void validate(const RunConfig& c);
nlohmann::json to_json(const RunConfig& c);
// Missing keys keep their defaults; type errors throw Error(invalid_argument).
RunConfig run_config_from_json(const nlohmann::json& j);

enum class ExitCode { ok = 0, anomaly = 1, invalid_config = 2, solver_failure = 3 };

struct OutputFile {
    std::string suffix;  // appended to the prefix, e.g. ".json", ".nodal.csv"
    std::string contents;
};

struct RunResult {
    ExitCode code = ExitCode::ok;
    nlohmann::json report;
    std::vector<OutputFile> files;  // report JSON first
    std::string summary;            // human-readable, one line per item
    std::string error;
};

// Validates and runs; never throws. Invalid configs give exit 2, errors
// raised by a solve give exit 3.
RunResult run(const RunConfig& c);
// Writes every file of r under `prefix`; throws Error(io_error).
void write_outputs(const RunResult& r, const std::string& prefix);

// A predicate evaluated at two consecutive levels.
// pass: holds at both. fail: fails at both without shrinking.
// unresolved: holds at one level only, or the violation shrinks by 0.6 or more per level.
PropertyVerdict combine(const Property& coarse, const Property& fine, std::string* note = nullptr);

struct TriangleReport {
    Triangle input;
    Triangle triangle;  // canonical
    TriangleClass cls;
    EigenEstimate mu2;
    double mu3 = 0.0;
    double gap = 0.0;
    double coarse_gap = 0.0;
    bool multiple = false;
    std::optional<PropertyBattery> coarse, fine;
    std::vector<Property> properties;  // combined over the two levels
    std::string verdict;               // pass, inconclusive, anomaly
    std::vector<std::string> anomalies;
    std::shared_ptr<const EigenField> field;  // finest level
};

// Richardson estimate over config levels lo..hi and the battery at hi - 1 and hi.
// With plant_interior_max the fields are replaced by a bump peaked at the centroid.
TriangleReport analyze_triangle(const Triangle& t, const RunConfig& c, bool plant_interior_max = false);
nlohmann::json to_json(const TriangleReport& r);

nlohmann::json to_json(const Bounded& b);
nlohmann::json to_json(const Check& c);
nlohmann::json to_json(const InequalityReport& r);

// Round-trip decimal (17 significant digits).
std::string format_double(double v);
// Nodal polylines: component,x1,x2.
std::string nodal_csv(const NodalLine& nl);
// Element centroids: x1,x2,u,du_dx1,du_dx2.
std::string gradient_csv(const EigenField& f);

}  // namespace hotspots
