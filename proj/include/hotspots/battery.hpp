#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hotspots/geometry.hpp"
#include "hotspots/spectral.hpp"

namespace hotspots {

enum class PropertyVerdict { pass, fail, unresolved, skipped };
const char* to_string(PropertyVerdict v);

// One predicate of the battery. Numeric predicates pass when margin > 0;
// margin is NaN for structural ones (census, nodal line, extrema).
struct Property {
    std::string name;
    PropertyVerdict verdict = PropertyVerdict::skipped;
    double margin = 0.0;
    double tolerance = 0.0;
    int level = -1;
    std::string detail;
};

struct PropertyBattery {
    Triangle triangle;
    TriangleClass cls;
    int level = -1;
    double h = 0.0;
    double eigenvalue = 0.0;
    std::array<VertexSign, 3> vertices{};
    std::string sign_pattern;  // ordered (z3, z1, z2)
    CriticalPointReport critical;
    std::string census;
    NodalLine nodal;
    ExtremaReport extrema;
    double fold_z1 = 0.0;  // sup |u + u o reflection| over the z1 kite, relative
    std::vector<Property> properties;

    const Property* property(const std::string& name) const;
    std::vector<std::string> failures() const;
};

// Names in report order.
inline constexpr std::array<const char*, 9> kPropertyNames{
    "u(z3)", "-u(z1)", "-u(z2)", "critical points", "nodal line", "extrema",
    "monotonicity", "dominance S", "dominance M"};

// Checks the hot-spot predicates on a Neumann field over its own triangle
// labels. Label-dependent predicates are skipped for non-canonical triangles
// and everything is skipped on the equilateral triangle.
PropertyBattery property_battery(const EigenField& f, const AnalysisOptions& opt = {});

nlohmann::json to_json(const Property& p);
nlohmann::json to_json(const PropertyBattery& b);

}  // namespace hotspots
