#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hotspots/eigensolve.hpp"
#include "hotspots/geometry.hpp"
#include "hotspots/spectral.hpp"

namespace hotspots {

struct SeedField {
    std::string name;
    Triangle triangle;
    double eigenvalue = 0.0;
    std::function<double(Point2)> u;  // L2-normalized on the triangle
};

// "half_equilateral" or "isosceles_right"; throws invalid_argument otherwise.
SeedField seed_field(const std::string& name);

struct ContinuationOptions {
    int steps = 32;
    int level = 5;
    int order = 2;
    double bisect_tol = 1e-3;    // width in t of refined sign-change brackets
    double multiple_gap = 1e-3;  // relative gap threshold, checked at level - 1 and level
    double locus_rate = 4.0;     // allowed saddle displacement per unit t, plus 2h
    AnalysisOptions analysis;
    SolverOptions solver;
};

// A quantity whose sign the continuity argument preserves.
struct Margin {
    std::string name;
    double value = 0.0;  // > 0 when the property holds
    bool skipped = false;
    std::string reason;
};

struct SignChange {
    std::string margin;
    double t_lo = 0.0, t_hi = 0.0;  // bracket after bisection
};

struct ContinuationStepReport {
    double t = 0.0;
    Triangle triangle;
    bool failed = false;
    std::string failure;

    double mu2 = 0.0, mu3 = 0.0, gap = 0.0;
    double coarse_gap = 0.0;  // at level - 1
    bool numerically_multiple = false;
    std::array<VertexSign, 3> vertices{};
    std::string sign_pattern;  // ordered (z3, z1, z2)
    double alignment = 0.0;    // M inner product with the previous step before alignment

    std::vector<CriticalPoint> critical_points;
    std::string census;  // "saddle on shortest side", "none", "unresolved near z1", ...
    std::optional<double> locus_shift;  // saddle displacement from the previous step

    std::vector<Margin> margins;  // gap, vertex signs, monotonicity, dominance
    std::vector<std::string> anomalies;
    std::vector<SignChange> sign_changes;  // against the previous step

    const Margin* margin(const std::string& name) const;
};

struct ContinuationTrace {
    Triangle start, target;  // canonical
    ContinuationOptions options;
    std::vector<ContinuationStepReport> steps;
    int anomaly_steps() const;
    std::vector<int> multiple_steps() const;
};

// Solves and analyzes one triangle of the family. `previous` fixes the sign by
// the M inner product; without it the field keeps the u(z3) > 0 convention.
ContinuationStepReport continuation_step(const Triangle& t, double param, const ContinuationOptions& opt,
                                         const EigenField* previous = nullptr, EigenField* field = nullptr);

// Traces (1 - t) T0 + t T1 vertex by vertex after canonicalizing both ends,
// with opt.steps + 1 reports at t = k / steps.
ContinuationTrace trace(const Triangle& t0, const Triangle& t1, const ContinuationOptions& opt = {});

nlohmann::json to_json(const ContinuationStepReport& s);

}  // namespace hotspots
