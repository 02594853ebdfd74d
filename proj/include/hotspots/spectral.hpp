#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hotspots/eigensolve.hpp"
#include "hotspots/fe.hpp"
#include "hotspots/geometry.hpp"
#include "hotspots/mesh.hpp"

namespace hotspots {

struct AnalysisOptions {
    double grad_tol = 1e-3;    // relative to max |grad u|
    double mono_tol = 1e-6;    // relative to max |grad u|, plus the h^2 allowance below
    double vertex_tol = 1e-6;  // relative to max |u|
    double cluster_factor = 2.0;  // cluster radius in units of h
    double dominance_tol = 1e-6;  // relative to max |u|, plus the h^2 allowance below
    // Discretization allowance added to mono_tol and dominance_tol: allowance * (h / diam)^2.
    double allowance = 1.0;
    // Monotonicity skips quadrature points this many h from a vertex with angle > pi/2.
    double blunt_exclusion = 2.0;
};

/// Finite element function on a single-triangle mesh. Vertex labels follow mesh.domain.
struct EigenField {
    std::shared_ptr<const Mesh> mesh;
    Eigen::VectorXd u;  // nodal values
    bool flipped = false;  // sign was reversed during normalization
    double eigenvalue = 0.0;

    const Triangle& triangle() const { return *mesh->domain; }
    int vertex_node(VertexId v) const;
    double vertex_value(VertexId v) const { return u[vertex_node(v)]; }
    // nullopt outside the domain
    std::optional<double> value(Point2 p) const;
    std::optional<Point2> grad(Point2 p) const;
    double max_abs() const;
    double max_grad() const;  // over element vertices and quadrature points
    double h() const { return mesh->h(); }
};

// Takes ownership of the mesh and vector, then applies the sign convention:
// u(z3) > 0 when |u(z3)| > vertex_tol * max|u|, otherwise the vertex of
// largest |u| is made positive.
EigenField make_field(Mesh mesh, Eigen::VectorXd u, double eigenvalue, double vertex_tol = 1e-6);
EigenField make_field(const NeumannResult& r, double vertex_tol = 1e-6);
void normalize_sign(EigenField& f, double vertex_tol);

struct VertexSign {
    double value = 0.0;
    char sign = '0';  // '+', '-' or '0'
};

std::array<VertexSign, 3> vertex_values(const EigenField& f, double vertex_tol = 1e-6);
std::string sign_pattern(const std::array<VertexSign, 3>& v);

enum class LocusKind { interior, side, vertex };

struct Locus {
    LocusKind kind = LocusKind::interior;
    int id = -1;               // SideId or VertexId index
    double position = 0.0;     // side parameter in [0, 1] from the side's first vertex
};

std::string describe(const Locus& l);
// Vertex within `radius`, else side within `radius`, else interior.
Locus classify_point(const Triangle& t, Point2 p, double radius);

enum class CriticalClass { saddle, local_max, local_min, degenerate };
const char* to_string(CriticalClass c);

struct CriticalPoint {
    Point2 location;
    Locus locus;
    CriticalClass kind = CriticalClass::degenerate;
    double gradient_norm = 0.0;
    std::array<int, 2> hessian_signs{0, 0};  // ascending eigenvalues: -1, 0, +1
};

struct CriticalPointReport {
    std::vector<CriticalPoint> points;  // non-vertex points only
    double grad_tol = 0.0;
    double cluster_radius = 0.0;
    double max_gradient = 0.0;
    int candidates = 0;  // before clustering
};

CriticalPointReport critical_points(const EigenField& f, const AnalysisOptions& opt = {});

struct NodalEndpoint {
    Point2 point;
    Locus locus;
};

struct NodalLine {
    std::vector<std::vector<Point2>> components;  // polylines; closed loops repeat their first point
    std::vector<NodalEndpoint> endpoints;          // of the longest component
    int component_count = 0;
    bool anomaly = false;  // more than one component
};

NodalLine nodal_line(const EigenField& f);

struct MonotonicityReport {
    Point2 direction;
    double min_derivative = 0.0;   // min of grad u . direction, relative to max |grad u|
    double max_derivative = 0.0;
    double tolerance = 0.0;        // relative threshold actually used
    std::vector<Point2> violating_points;
    int samples = 0;
    int excluded = 0;  // near obtuse vertices
    bool monotone() const { return violating_points.empty(); }
};

MonotonicityReport monotonicity(const EigenField& f, Point2 direction, const AnalysisOptions& opt = {});

struct RotationMargin {
    double min = 0.0;  // of R_p u / (max |grad u| * diam)
    double max = 0.0;
    int samples = 0;
};

// R_p u = -(x2 - p2) d1 u + (x1 - p1) d2 u over quadrature points where `region` holds.
RotationMargin rotation_margin(const EigenField& f, Point2 p, const std::function<bool(Point2)>& region);

struct DominanceReport {
    double min_difference = 0.0;  // min of u(reflect x) - u(x), relative to max |u|
    double tolerance = 0.0;
    std::vector<Point2> violating_points;
    int samples = 0;
    double worst_excess = 0.0;  // largest distance of a reflected sample outside T
    bool geometry_anomaly = false;
    bool holds() const { return violating_points.empty() && !geometry_anomaly; }
};

DominanceReport reflection_dominance(const EigenField& f, const ReflectionAxis& axis, const AnalysisOptions& opt = {});

struct MovingPlaneRow {
    double lambda = 0.0;
    double min_w = 0.0;  // relative to max |u|; +inf when the region is empty
    int samples = 0;
};

struct MovingPlaneProfile {
    std::vector<MovingPlaneRow> rows;
    double tolerance = 0.0;
    bool holds = true;
    bool applicable = true;  // needs |z3 - z1| < |z3 - z2|
};

// lambda grid of `count` values spanning [Re z3, (Re z1 + Re z2) / 2]
MovingPlaneProfile moving_plane_profile(const EigenField& f, int count = 16, const AnalysisOptions& opt = {});

struct FoldReport {
    double sup_w = 0.0;  // sup |u(x) + u(reflect x)| over the kite, relative to max |u|
    int samples = 0;
    double kite_area = 0.0;
};

FoldReport fold_antisymmetry(const EigenField& f, VertexId v);

struct ExtremaReport {
    Point2 argmax, argmin;
    double max = 0.0, min = 0.0;
    Locus max_locus, min_locus;
    bool at_longest_side_endpoints = false;
    bool anomaly = false;  // an extremum away from the boundary
};

ExtremaReport extrema_location(const EigenField& f);

}  // namespace hotspots
