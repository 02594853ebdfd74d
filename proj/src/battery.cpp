#include "hotspots/battery.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace hotspots {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kAngleSlack = 1e-12;
const double nan = std::numeric_limits<double>::quiet_NaN();

Property numeric(std::string name, double margin, double tol, int level) {
    return {std::move(name), margin > 0.0 ? PropertyVerdict::pass : PropertyVerdict::fail, margin, tol, level, {}};
}

Property structural(std::string name, PropertyVerdict v, int level, std::string detail) {
    return {std::move(name), v, nan, 0.0, level, std::move(detail)};
}

Property skipped(std::string name, int level, std::string reason) {
    return {std::move(name), PropertyVerdict::skipped, nan, 0.0, level, std::move(reason)};
}

bool on_side(const NodalEndpoint& e, SideId s) { return e.locus.kind == LocusKind::side && e.locus.id == index(s); }

}  // namespace

const char* to_string(PropertyVerdict v) {
    switch (v) {
        case PropertyVerdict::pass: return "pass";
        case PropertyVerdict::fail: return "fail";
        case PropertyVerdict::unresolved: return "unresolved";
        case PropertyVerdict::skipped: return "skipped";
    }
    return "?";
}

const Property* PropertyBattery::property(const std::string& name) const {
    for (const Property& p : properties) {
        if (p.name == name) return &p;
    }
    return nullptr;
}

std::vector<std::string> PropertyBattery::failures() const {
    std::vector<std::string> out;
    for (const Property& p : properties) {
        if (p.verdict == PropertyVerdict::fail) out.push_back(p.name);
    }
    return out;
}

PropertyBattery property_battery(const EigenField& f, const AnalysisOptions& opt) {
    const Triangle& t = f.triangle();
    PropertyBattery b{t, classify(t)};
    b.level = f.mesh->level;
    b.h = f.h();
    b.eigenvalue = f.eigenvalue;
    b.vertices = vertex_values(f, opt.vertex_tol);
    b.sign_pattern = {b.vertices[2].sign, b.vertices[0].sign, b.vertices[1].sign};
    const int lv = b.level;

    if (b.cls.symmetry_class == SymmetryClass::equilateral) {
        for (const char* name : kPropertyNames) b.properties.push_back(skipped(name, lv, "equilateral: two-dimensional eigenspace"));
        return b;
    }
    b.critical = critical_points(f, opt);
    b.nodal = nodal_line(f);
    b.extrema = extrema_location(f);
    b.fold_z1 = fold_antisymmetry(f, VertexId::z1).sup_w;

    if (!is_canonical(t)) {
        for (const char* name : kPropertyNames) b.properties.push_back(skipped(name, lv, "triangle is not canonically labeled"));
        return b;
    }

    const bool super_eq = b.cls.symmetry_class == SymmetryClass::super_equilateral;
    const bool not_obtuse = b.cls.largest_angle <= pi / 2 + kAngleSlack;
    const bool expect_saddle = b.cls.angle_class == AngleClass::acute && !super_eq;

    // vertex signs: the nodal line separates z3 from z1 and z2
    const double scale = f.max_abs();
    b.properties.push_back(numeric("u(z3)", b.vertices[2].value / scale, 0.0, lv));
    if (super_eq) {
        b.properties.push_back(skipped("-u(z1)", lv, "super-equilateral apex lies on the nodal line"));
    } else {
        b.properties.push_back(numeric("-u(z1)", -b.vertices[0].value / scale, 0.0, lv));
    }
    b.properties.push_back(numeric("-u(z2)", -b.vertices[1].value / scale, 0.0, lv));

    // critical point census
    const auto& pts = b.critical.points;
    if (pts.empty()) {
        b.census = expect_saddle ? "unresolved: no saddle outside the vertex exclusion radius" : "none";
        b.properties.push_back(structural("critical points",
                                          expect_saddle ? PropertyVerdict::unresolved : PropertyVerdict::pass, lv,
                                          b.census));
    } else if (pts.size() == 1 && pts[0].kind == CriticalClass::saddle && pts[0].locus.kind == LocusKind::side &&
               pts[0].locus.id == index(SideId::z1z2)) {
        b.census = "saddle on shortest side";
        b.properties.push_back(structural("critical points",
                                          expect_saddle ? PropertyVerdict::pass : PropertyVerdict::fail, lv,
                                          expect_saddle ? b.census : b.census + " where none should exist"));
    } else {
        b.census = std::to_string(pts.size()) + " critical points:";
        for (const CriticalPoint& c : pts) b.census += " " + std::string(to_string(c.kind)) + " on " + describe(c.locus);
        b.properties.push_back(structural("critical points", PropertyVerdict::fail, lv, b.census));
    }

    // nodal line
    {
        std::string detail = std::to_string(b.nodal.component_count) + " component(s);";
        for (const NodalEndpoint& e : b.nodal.endpoints) detail += " " + describe(e.locus);
        bool ok = !b.nodal.anomaly && b.nodal.endpoints.size() == 2;
        if (ok) {
            const NodalEndpoint& p = b.nodal.endpoints[0];
            const NodalEndpoint& q = b.nodal.endpoints[1];
            if (super_eq) {
                // symmetry axis from the apex z1 to the middle of z2z3
                auto apex = [](const NodalEndpoint& e) { return e.locus.kind == LocusKind::vertex && e.locus.id == 0; };
                auto mid = [&](const NodalEndpoint& e) {
                    return on_side(e, SideId::z2z3) && std::abs(e.locus.position - 0.5) * distance(t.vertex(VertexId::z2), t.vertex(VertexId::z3)) <= b.h;
                };
                ok = (apex(p) && mid(q)) || (apex(q) && mid(p));
            } else {
                ok = (on_side(p, SideId::z2z3) && on_side(q, SideId::z3z1)) ||
                     (on_side(q, SideId::z2z3) && on_side(p, SideId::z3z1));
            }
        }
        b.properties.push_back(structural("nodal line", ok ? PropertyVerdict::pass : PropertyVerdict::fail, lv, detail));
    }

    // extrema at the longest side endpoints
    {
        const std::string detail = "max on " + describe(b.extrema.max_locus) + ", min on " + describe(b.extrema.min_locus);
        const bool ok = b.extrema.at_longest_side_endpoints && !b.extrema.anomaly;
        b.properties.push_back(structural("extrema", ok ? PropertyVerdict::pass : PropertyVerdict::fail, lv, detail));
    }

    const MonotonicityReport mono = monotonicity(f, direction_frame(t).n_S, opt);
    b.properties.push_back(numeric("monotonicity", mono.min_derivative + mono.tolerance, mono.tolerance, lv));

    if (not_obtuse) {
        const ReflectionAxes axes = reflection_axes(t);
        const DominanceReport ds = reflection_dominance(f, axes.shortest, opt);
        const DominanceReport dm = reflection_dominance(f, axes.medium, opt);
        Property ps = numeric("dominance S", ds.min_difference + ds.tolerance, ds.tolerance, lv);
        Property pm = numeric("dominance M", dm.min_difference + dm.tolerance, dm.tolerance, lv);
        if (ds.geometry_anomaly) {
            ps.verdict = PropertyVerdict::fail;
            ps.detail = "reflected cap leaves the triangle";
        }
        if (dm.geometry_anomaly) {
            pm.verdict = PropertyVerdict::fail;
            pm.detail = "reflected cap leaves the triangle";
        }
        b.properties.push_back(ps);
        b.properties.push_back(pm);
    } else {
        b.properties.push_back(skipped("dominance S", lv, "largest angle exceeds pi/2"));
        b.properties.push_back(skipped("dominance M", lv, "largest angle exceeds pi/2"));
    }
    return b;
}

nlohmann::json to_json(const Property& p) {
    nlohmann::json j{{"name", p.name}, {"verdict", to_string(p.verdict)}, {"level", p.level}};
    j["margin"] = std::isnan(p.margin) ? nlohmann::json(nullptr) : nlohmann::json(p.margin);
    j["tolerance"] = p.tolerance;
    if (!p.detail.empty()) j["detail"] = p.detail;
    return j;
}

nlohmann::json to_json(const PropertyBattery& b) {
    nlohmann::json j;
    j["level"] = b.level;
    j["h"] = b.h;
    j["eigenvalue"] = b.eigenvalue;
    j["class"] = {{"angle", to_string(b.cls.angle_class)}, {"symmetry", to_string(b.cls.symmetry_class)}};
    j["vertex_values"] = {b.vertices[0].value, b.vertices[1].value, b.vertices[2].value};
    j["sign_pattern_z3_z1_z2"] = b.sign_pattern;
    j["census"] = b.census;
    nlohmann::json cps = nlohmann::json::array();
    for (const CriticalPoint& c : b.critical.points) {
        cps.push_back({{"x", {c.location.x1, c.location.x2}},
                       {"locus", describe(c.locus)},
                       {"position", c.locus.position},
                       {"class", to_string(c.kind)},
                       {"gradient_norm", c.gradient_norm},
                       {"hessian_signs", c.hessian_signs}});
    }
    j["critical_points"] = cps;
    nlohmann::json ends = nlohmann::json::array();
    for (const NodalEndpoint& e : b.nodal.endpoints) {
        ends.push_back({{"x", {e.point.x1, e.point.x2}}, {"locus", describe(e.locus)}, {"position", e.locus.position}});
    }
    j["nodal_line"] = {{"components", b.nodal.component_count}, {"endpoints", ends}};
    j["extrema"] = {{"argmax", {b.extrema.argmax.x1, b.extrema.argmax.x2}},
                    {"argmin", {b.extrema.argmin.x1, b.extrema.argmin.x2}},
                    {"max", b.extrema.max},
                    {"min", b.extrema.min},
                    {"at_longest_side_endpoints", b.extrema.at_longest_side_endpoints}};
    j["fold_antisymmetry_z1"] = b.fold_z1;
    nlohmann::json props = nlohmann::json::array();
    for (const Property& p : b.properties) props.push_back(to_json(p));
    j["properties"] = props;
    return j;
}

}  // namespace hotspots
