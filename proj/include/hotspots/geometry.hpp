#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hotspots {

struct Point2 {
    double x1 = 0.0;
    double x2 = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
    friend Point2 operator*(double s, Point2 a) { return {s * a.x1, s * a.x2}; }
    friend Point2 operator*(Point2 a, double s) { return {s * a.x1, s * a.x2}; }
    friend bool operator==(Point2 a, Point2 b) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }
inline double cross(Point2 a, Point2 b) { return a.x1 * b.x2 - a.x2 * b.x1; }
inline double norm(Point2 a) { return std::hypot(a.x1, a.x2); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
// Counter-clockwise quarter turn.
inline Point2 rotate90(Point2 a) { return {-a.x2, a.x1}; }
inline Point2 normalized(Point2 a) { return (1.0 / norm(a)) * a; }

enum class VertexId { z1 = 0, z2 = 1, z3 = 2 };

// Sides are named by their endpoints; side k joins vertex k and vertex (k+1) mod 3.
enum class SideId { z1z2 = 0, z2z3 = 1, z3z1 = 2 };

inline int index(VertexId v) { return static_cast<int>(v); }
inline int index(SideId s) { return static_cast<int>(s); }
const char* to_string(VertexId v);
const char* to_string(SideId s);
std::optional<SideId> parse_side(std::string_view name);
std::optional<VertexId> parse_vertex(std::string_view name);
// The side that does not touch vertex v.
SideId opposite_side(VertexId v);
VertexId opposite_vertex(SideId s);

/// Labeled planar triangle. Vertices are stored counter-clockwise; a clockwise
/// input is reoriented by swapping z2 and z3.
class Triangle {
public:
    Triangle(Point2 z1, Point2 z2, Point2 z3);

    Point2 vertex(VertexId v) const { return vertices_[index(v)]; }
    Point2 vertex(int i) const { return vertices_[i]; }
    const std::array<Point2, 3>& vertices() const { return vertices_; }
    std::pair<Point2, Point2> endpoints(SideId s) const;

    double side_length(SideId s) const;
    // Inner angle at v, computed from the two edge vectors with atan2.
    double angle(VertexId v) const;
    double signed_area() const;
    double area() const { return signed_area(); }
    double diameter() const;
    Point2 centroid() const;
    bool reoriented() const { return reoriented_; }

    // Barycentric coordinates of p with respect to (z1, z2, z3).
    std::array<double, 3> barycentric(Point2 p) const;
    bool contains(Point2 p, double tol = 1e-12) const;

private:
    std::array<Point2, 3> vertices_;
    bool reoriented_ = false;
};

Triangle parse_triangle_literal(std::string_view text);
Triangle parse_triangle_json(std::string_view text);
std::string format_triangle_literal(const Triangle& t);

struct SimilarityTransform {
    // new = F(reflect) * scale * R(rotation) * (old - origin), F negates x2
    Point2 origin;
    double scale = 1.0;
    double rotation = 0.0;
    bool reflect = false;
    // new label k was old label relabel[k]
    std::array<int, 3> relabel{0, 1, 2};

    Point2 apply(Point2 p) const;
    Point2 inverse(Point2 q) const;
    bool is_identity() const;
};

struct CanonicalTriangle {
    Triangle triangle;
    SimilarityTransform transform;
};

constexpr double kTieTolerance = 1e-9;

/// Places the triangle at z1 = 0, z2 = 1, z3 in the upper half plane with
/// |z2z3| >= |z3z1| >= |z1z2|. Ties are resolved by choosing the
/// lexicographically smallest relabeling.
CanonicalTriangle canonicalize(const Triangle& t, double tie_tol = kTieTolerance);
bool is_canonical(const Triangle& t, double tie_tol = kTieTolerance);

enum class SideRank { shortest, medium, longest };

struct SideLabeling {
    SideId longest;
    SideId medium;
    SideId shortest;
    std::array<double, 3> lengths;  // indexed by SideId
    double tie_tolerance = kTieTolerance;

    SideId side(SideRank r) const;
    // True when the lengths of a and b agree within the tie tolerance.
    bool tied(SideId a, SideId b) const;
};

SideLabeling label_sides(const Triangle& t, double tie_tol = kTieTolerance);

enum class AngleClass { acute, right, obtuse };
enum class SymmetryClass { scalene, sub_equilateral, super_equilateral, equilateral, other_isosceles };

const char* to_string(AngleClass c);
const char* to_string(SymmetryClass c);

struct TriangleClass {
    AngleClass angle_class;
    SymmetryClass symmetry_class;
    double largest_angle;
    std::optional<VertexId> apex;  // set for isosceles classes
    // Distance to the nearest class boundary: min of the relative side gap
    // and the angle distances |largest - pi/2| and |apex - pi/3|.
    double boundary_distance;
};

TriangleClass classify(const Triangle& t, double tol = kTieTolerance);

Triangle homotopy(double t, const Triangle& t0, const Triangle& t1);

struct BisectorFoot {
    Point2 foot;
    double length;
};

BisectorFoot bisector_foot(const Triangle& t, VertexId v);
// 2 l1 l2 cos(alpha/2) / (l1 + l2)
double bisector_length_formula(double l1, double l2, double alpha);

struct PerpendicularFoot {
    Point2 foot;
    double parameter;  // position along the side, 0 at its first endpoint
    bool interior;     // strictly inside the side
};

PerpendicularFoot perpendicular_foot(const Triangle& t, VertexId from, SideId onto);

using Polygon = std::vector<Point2>;

// Keeps the part of a convex polygon with dot(x - base, normal) >= 0.
Polygon clip_halfplane(const Polygon& poly, Point2 base, Point2 normal);
Polygon clip_convex(const Polygon& poly, const Polygon& convex_ccw);
double polygon_area(const Polygon& poly);
Polygon triangle_polygon(const Triangle& t);

Point2 reflect_across_line(Point2 p, Point2 base, Point2 direction);

struct ReflectionAxis {
    Point2 base_point;
    Point2 direction;  // unit
    Polygon cap;       // region on which dominance u(reflect(x)) >= u(x) is tested

    Point2 reflect(Point2 p) const { return reflect_across_line(p, base_point, direction); }
};

struct ReflectionAxes {
    ReflectionAxis shortest;  // perpendicular bisector of z1z2
    ReflectionAxis medium;    // perpendicular bisector of z3z1
};

ReflectionAxes reflection_axes(const Triangle& canonical);

struct CapContainment {
    bool contained;
    double worst_excess;  // largest distance of a reflected cap vertex outside T
};

CapContainment check_cap_containment(const Triangle& t, const ReflectionAxis& axis);

struct DirectionFrame {
    Point2 tau_S, n_S, tau_M, n_M, tau_L, n_L;
};

// Tangents follow the natural side direction (z1->z2, z3->z1, z2->z3);
// normals are the inward quarter turns. Assumes canonical labeling.
DirectionFrame direction_frame(const Triangle& canonical);

// The largest convex region symmetric under reflection in the internal bisector at v.
Polygon bisector_kite(const Triangle& t, VertexId v);

}  // namespace hotspots
