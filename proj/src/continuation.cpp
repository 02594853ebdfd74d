#include "hotspots/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hotspots/assembly.hpp"
#include "hotspots/battery.hpp"
#include "hotspots/error.hpp"

namespace hotspots {

namespace {

constexpr double pi = std::numbers::pi;

Margin skipped_margin(std::string name, std::string reason) {
    Margin m;
    m.name = std::move(name);
    m.skipped = true;
    m.reason = std::move(reason);
    return m;
}

bool positive(const Margin& m) { return m.value > 0.0; }

}  // namespace

SeedField seed_field(const std::string& name) {
    if (name == "half_equilateral") {
        const double s3 = std::sqrt(3.0);
        const double c = std::pow(16.0 / 27.0, 0.25);
        return {name, Triangle({0, 0}, {1, 0}, {0, s3}), 4 * pi * pi / 9, [c, s3](Point2 x) {
                    return c * (std::cos(2 * pi * x.x1 / 3) - 2 * std::cos(pi * x.x2 / s3) * std::cos(pi * x.x1 / 3));
                }};
    }
    if (name == "isosceles_right") {
        return {name, Triangle({0, 0}, {1, 0}, {0, 1}), pi * pi,
                [](Point2 x) { return std::sqrt(2.0) * (std::cos(pi * x.x1) - std::cos(pi * x.x2)); }};
    }
    throw Error(ErrorCode::invalid_argument, "unknown seed '" + name + "' (half_equilateral, isosceles_right)");
}

const Margin* ContinuationStepReport::margin(const std::string& name) const {
    for (const Margin& m : margins) {
        if (m.name == name) return &m;
    }
    return nullptr;
}

int ContinuationTrace::anomaly_steps() const {
    return static_cast<int>(std::count_if(steps.begin(), steps.end(), [](const ContinuationStepReport& s) {
        return s.failed || !s.anomalies.empty();
    }));
}

std::vector<int> ContinuationTrace::multiple_steps() const {
    std::vector<int> out;
    for (std::size_t k = 0; k < steps.size(); ++k) {
        if (steps[k].numerically_multiple) out.push_back(static_cast<int>(k));
    }
    return out;
}

ContinuationStepReport continuation_step(const Triangle& t, double param, const ContinuationOptions& opt,
                                         const EigenField* previous, EigenField* field) {
    ContinuationStepReport rep{param, t};
    if (opt.level < 1) throw Error(ErrorCode::invalid_argument, "continuation level must be at least 1");
    NeumannResult fine;
    try {
        const NeumannResult coarse = neumann_mu2(t, opt.level - 1, opt.order, opt.solver);
        fine = neumann_mu2(t, opt.level, opt.order, opt.solver, &coarse);
        rep.coarse_gap = coarse.gap;
        rep.numerically_multiple = coarse.gap < opt.multiple_gap * coarse.mu2 && fine.gap < opt.multiple_gap * fine.mu2;
        rep.margins.push_back({"gap", std::max(coarse.gap / coarse.mu2, fine.gap / fine.mu2) - opt.multiple_gap});
    } catch (const Error& e) {
        rep.failed = true;
        rep.failure = e.what();
        return rep;
    }
    rep.mu2 = fine.mu2;
    rep.mu3 = fine.mu3;
    rep.gap = fine.gap;

    EigenField f = make_field(fine, opt.analysis.vertex_tol);
    if (previous) {
        if (previous->u.size() != f.u.size()) {
            throw Error(ErrorCode::invalid_argument, "sign alignment needs fields on the same lattice");
        }
        const SparseMatrix& M = assemble(*f.mesh).M;
        const Eigen::VectorXd Mu = M * f.u;
        rep.alignment = previous->u.dot(Mu) / std::sqrt(f.u.dot(Mu) * previous->u.dot(M * previous->u));
        if (rep.alignment < 0) {
            f.u = -f.u;
            f.flipped = !f.flipped;
            rep.alignment = -rep.alignment;
        }
    }

    const PropertyBattery b = property_battery(f, opt.analysis);
    rep.vertices = b.vertices;
    rep.sign_pattern = b.sign_pattern;
    rep.critical_points = b.critical.points;
    rep.census = b.census;
    if (!is_canonical(t)) rep.anomalies.push_back("family left the canonical labeling");
    if (rep.numerically_multiple) rep.anomalies.push_back("numerically multiple");
    for (const Property& p : b.properties) {
        if (p.name == "critical points" || p.name == "nodal line" || p.name == "extrema") {
            if (p.verdict == PropertyVerdict::fail) rep.anomalies.push_back(p.name + ": " + p.detail);
            continue;
        }
        if (p.verdict == PropertyVerdict::skipped) {
            rep.margins.push_back(skipped_margin(p.name, p.detail));
            continue;
        }
        rep.margins.push_back({p.name, p.margin});
        if (p.verdict == PropertyVerdict::fail) rep.anomalies.push_back("margin " + p.name + (p.detail.empty() ? "" : ": " + p.detail));
    }

    if (field) *field = std::move(f);
    return rep;
}

namespace {

std::optional<Point2> saddle_of(const ContinuationStepReport& s) {
    if (s.critical_points.size() == 1 && s.critical_points[0].kind == CriticalClass::saddle) {
        return s.critical_points[0].location;
    }
    return std::nullopt;
}

// Margins whose sign differs between a and b, both evaluated.
std::vector<std::string> flipped_margins(const ContinuationStepReport& a, const ContinuationStepReport& b) {
    std::vector<std::string> out;
    for (const Margin& mb : b.margins) {
        const Margin* ma = a.margin(mb.name);
        if (!ma || ma->skipped || mb.skipped) continue;
        if (positive(*ma) != positive(mb)) out.push_back(mb.name);
    }
    return out;
}

}  // namespace

ContinuationTrace trace(const Triangle& t0, const Triangle& t1, const ContinuationOptions& opt) {
    if (opt.steps < 1) throw Error(ErrorCode::invalid_argument, "continuation needs at least one step");
    if (!(opt.bisect_tol > 0)) throw Error(ErrorCode::invalid_argument, "bisection tolerance must be positive");
    // the family keeps the side ordering only between canonically labeled endpoints
    const Triangle a = canonicalize(t0).triangle, b = canonicalize(t1).triangle;
    ContinuationTrace out{a, b, opt, {}};
    std::optional<EigenField> prev;
    const double dt = 1.0 / opt.steps;
    for (int k = 0; k <= opt.steps; ++k) {
        const double t = k == opt.steps ? 1.0 : k * dt;
        EigenField f;
        ContinuationStepReport rep = continuation_step(homotopy(t, a, b), t, opt, prev ? &*prev : nullptr, &f);
        if (!out.steps.empty() && !rep.failed && !out.steps.back().failed) {
            const ContinuationStepReport& last = out.steps.back();
            const auto s0 = saddle_of(last), s1 = saddle_of(rep);
            if (s0 && s1) {
                rep.locus_shift = distance(*s0, *s1);
                if (*rep.locus_shift > opt.locus_rate * dt + 2.0 * f.h()) rep.anomalies.push_back("saddle locus jump");
            }
            for (const std::string& name : flipped_margins(last, rep)) {
                // bisect between the last step and this one
                double lo = last.t, hi = t;
                EigenField f_lo = *prev;
                const bool lo_positive = positive(*last.margin(name));
                while (hi - lo > opt.bisect_tol) {
                    const double mid = 0.5 * (lo + hi);
                    EigenField f_mid;
                    const ContinuationStepReport m =
                        continuation_step(homotopy(mid, a, b), mid, opt, &f_lo, &f_mid);
                    const Margin* mm = m.failed ? nullptr : m.margin(name);
                    if (!mm || mm->skipped) break;
                    if (positive(*mm) == lo_positive) {
                        lo = mid;
                        f_lo = std::move(f_mid);
                    } else {
                        hi = mid;
                    }
                }
                rep.sign_changes.push_back({name, lo, hi});
            }
        }
        if (!rep.failed) prev = std::move(f);
        out.steps.push_back(std::move(rep));
    }
    return out;
}

nlohmann::json to_json(const ContinuationStepReport& s) {
    nlohmann::json j;
    j["t"] = s.t;
    j["triangle"] = {{s.triangle.vertex(0).x1, s.triangle.vertex(0).x2},
                     {s.triangle.vertex(1).x1, s.triangle.vertex(1).x2},
                     {s.triangle.vertex(2).x1, s.triangle.vertex(2).x2}};
    j["failed"] = s.failed;
    if (s.failed) {
        j["failure"] = s.failure;
        return j;
    }
    j["mu2"] = s.mu2;
    j["mu3"] = s.mu3;
    j["gap"] = s.gap;
    j["coarse_gap"] = s.coarse_gap;
    j["numerically_multiple"] = s.numerically_multiple;
    j["vertex_values"] = {s.vertices[0].value, s.vertices[1].value, s.vertices[2].value};
    j["sign_pattern_z3_z1_z2"] = s.sign_pattern;
    j["alignment"] = s.alignment;
    j["census"] = s.census;
    nlohmann::json cps = nlohmann::json::array();
    for (const CriticalPoint& c : s.critical_points) {
        cps.push_back({{"x", {c.location.x1, c.location.x2}},
                       {"locus", describe(c.locus)},
                       {"position", c.locus.position},
                       {"class", to_string(c.kind)}});
    }
    j["critical_points"] = cps;
    j["locus_shift"] = s.locus_shift ? nlohmann::json(*s.locus_shift) : nlohmann::json(nullptr);
    nlohmann::json margins = nlohmann::json::object();
    for (const Margin& m : s.margins) {
        margins[m.name] = m.skipped ? nlohmann::json{{"skipped", m.reason}} : nlohmann::json(m.value);
    }
    j["margins"] = margins;
    j["anomalies"] = s.anomalies;
    nlohmann::json changes = nlohmann::json::array();
    for (const SignChange& c : s.sign_changes) changes.push_back({{"margin", c.margin}, {"t", {c.t_lo, c.t_hi}}});
    j["sign_changes"] = changes;
    return j;
}

}  // namespace hotspots
