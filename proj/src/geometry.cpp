#include "hotspots/geometry.hpp"

#include <algorithm>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "hotspots/error.hpp"

namespace hotspots {

const char* to_string(VertexId v) {
    switch (v) {
        case VertexId::z1: return "z1";
        case VertexId::z2: return "z2";
        case VertexId::z3: return "z3";
    }
    return "?";
}

const char* to_string(SideId s) {
    switch (s) {
        case SideId::z1z2: return "z1z2";
        case SideId::z2z3: return "z2z3";
        case SideId::z3z1: return "z3z1";
    }
    return "?";
}

std::optional<SideId> parse_side(std::string_view name) {
    if (name == "z1z2" || name == "z2z1") return SideId::z1z2;
    if (name == "z2z3" || name == "z3z2") return SideId::z2z3;
    if (name == "z3z1" || name == "z1z3") return SideId::z3z1;
    return std::nullopt;
}

std::optional<VertexId> parse_vertex(std::string_view name) {
    if (name == "z1") return VertexId::z1;
    if (name == "z2") return VertexId::z2;
    if (name == "z3") return VertexId::z3;
    return std::nullopt;
}

SideId opposite_side(VertexId v) { return static_cast<SideId>((index(v) + 1) % 3); }
VertexId opposite_vertex(SideId s) { return static_cast<VertexId>((index(s) + 2) % 3); }

Triangle::Triangle(Point2 z1, Point2 z2, Point2 z3) : vertices_{z1, z2, z3} {
    for (const auto& p : vertices_) {
        if (!std::isfinite(p.x1) || !std::isfinite(p.x2)) {
            throw Error(ErrorCode::invalid_argument, "triangle vertex is not finite");
        }
    }
    const Point2 e1 = z2 - z1;
    const Point2 e2 = z3 - z1;
    const double c = cross(e1, e2);
    const double scale = std::max({dot(e1, e1), dot(e2, e2), dot(z3 - z2, z3 - z2)});
    if (scale == 0.0 || std::abs(c) <= 1e-14 * scale) {
        throw Error(ErrorCode::degenerate_geometry, "degenerate (collinear) triangle");
    }
    if (c < 0) {
        std::swap(vertices_[1], vertices_[2]);
        reoriented_ = true;
    }
}

std::pair<Point2, Point2> Triangle::endpoints(SideId s) const {
    const int k = index(s);
    return {vertices_[k], vertices_[(k + 1) % 3]};
}

double Triangle::side_length(SideId s) const {
    const auto [a, b] = endpoints(s);
    return distance(a, b);
}

double Triangle::angle(VertexId v) const {
    const int k = index(v);
    const Point2 a = vertices_[(k + 1) % 3] - vertices_[k];
    const Point2 b = vertices_[(k + 2) % 3] - vertices_[k];
    return std::atan2(std::abs(cross(a, b)), dot(a, b));
}

double Triangle::signed_area() const {
    return 0.5 * cross(vertices_[1] - vertices_[0], vertices_[2] - vertices_[0]);
}

double Triangle::diameter() const {
    return std::max({side_length(SideId::z1z2), side_length(SideId::z2z3), side_length(SideId::z3z1)});
}

Point2 Triangle::centroid() const {
    return (1.0 / 3.0) * (vertices_[0] + vertices_[1] + vertices_[2]);
}

std::array<double, 3> Triangle::barycentric(Point2 p) const {
    const double twice = 2.0 * signed_area();
    const double l1 = cross(vertices_[1] - p, vertices_[2] - p) / twice;
    const double l2 = cross(vertices_[2] - p, vertices_[0] - p) / twice;
    return {l1, l2, 1.0 - l1 - l2};
}

bool Triangle::contains(Point2 p, double tol) const {
    for (int k = 0; k < 3; ++k) {
        const Point2 a = vertices_[k];
        const Point2 b = vertices_[(k + 1) % 3];
        if (cross(b - a, p - a) / distance(a, b) < -tol) return false;
    }
    return true;
}

namespace {

std::vector<double> parse_numbers(std::string_view text, char separator_a, char separator_b) {
    std::vector<double> out;
    std::string token;
    auto flush = [&] {
        std::size_t start = token.find_first_not_of(" \t\n");
        std::size_t stop = token.find_last_not_of(" \t\n");
        if (start == std::string::npos) {
            throw Error(ErrorCode::invalid_argument, "empty coordinate in triangle literal");
        }
        const std::string trimmed = token.substr(start, stop - start + 1);
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(trimmed, &used);
        } catch (const std::exception&) {
            throw Error(ErrorCode::invalid_argument, "bad coordinate '" + trimmed + "'");
        }
        if (used != trimmed.size()) {
            throw Error(ErrorCode::invalid_argument, "bad coordinate '" + trimmed + "'");
        }
        out.push_back(value);
        token.clear();
    };
    for (char c : text) {
        if (c == separator_a || c == separator_b) {
            flush();
        } else {
            token.push_back(c);
        }
    }
    flush();
    return out;
}

}  // namespace

Triangle parse_triangle_literal(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\n");
    if (first != std::string_view::npos && text[first] == '[') return parse_triangle_json(text);
    if (std::count(text.begin(), text.end(), ';') != 2) {
        throw Error(ErrorCode::invalid_argument, "triangle literal must look like x1,y1;x2,y2;x3,y3");
    }
    const auto v = parse_numbers(text, ',', ';');
    if (v.size() != 6) {
        throw Error(ErrorCode::invalid_argument, "triangle literal needs six coordinates");
    }
    return Triangle({v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]});
}

Triangle parse_triangle_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::invalid_argument, std::string("triangle JSON: ") + e.what());
    }
    if (!j.is_array() || j.size() != 3) {
        throw Error(ErrorCode::invalid_argument, "triangle JSON must be an array of three [x,y] pairs");
    }
    std::array<Point2, 3> p;
    for (std::size_t i = 0; i < 3; ++i) {
        if (!j[i].is_array() || j[i].size() != 2 || !j[i][0].is_number() || !j[i][1].is_number()) {
            throw Error(ErrorCode::invalid_argument, "triangle JSON must be an array of three [x,y] pairs");
        }
        p[i] = {j[i][0].get<double>(), j[i][1].get<double>()};
    }
    return Triangle(p[0], p[1], p[2]);
}

std::string format_triangle_literal(const Triangle& t) {
    std::ostringstream out;
    char buf[64];
    for (int i = 0; i < 3; ++i) {
        if (i) out << ';';
        std::snprintf(buf, sizeof buf, "%.17g,%.17g", t.vertex(i).x1, t.vertex(i).x2);
        out << buf;
    }
    return out.str();
}

Point2 SimilarityTransform::apply(Point2 p) const {
    const Point2 d = p - origin;
    const double c = std::cos(rotation);
    const double s = std::sin(rotation);
    Point2 q{scale * (c * d.x1 - s * d.x2), scale * (s * d.x1 + c * d.x2)};
    if (reflect) q.x2 = -q.x2;
    return q;
}

Point2 SimilarityTransform::inverse(Point2 q) const {
    if (reflect) q.x2 = -q.x2;
    const double c = std::cos(rotation);
    const double s = std::sin(rotation);
    const Point2 d{(c * q.x1 + s * q.x2) / scale, (-s * q.x1 + c * q.x2) / scale};
    return d + origin;
}

bool SimilarityTransform::is_identity() const {
    return origin == Point2{} && scale == 1.0 && rotation == 0.0 && !reflect &&
           relabel == std::array<int, 3>{0, 1, 2};
}

namespace {

bool at_least(double a, double b, double tol) { return a >= b - tol * std::max(a, b); }

}  // namespace

CanonicalTriangle canonicalize(const Triangle& t, double tie_tol) {
    std::array<int, 3> perm{0, 1, 2};
    do {
        const Point2 a = t.vertex(perm[0]);
        const Point2 b = t.vertex(perm[1]);
        const Point2 c = t.vertex(perm[2]);
        const double l12 = distance(a, b);
        const double l23 = distance(b, c);
        const double l31 = distance(c, a);
        if (!at_least(l23, l31, tie_tol) || !at_least(l31, l12, tie_tol)) continue;

        SimilarityTransform tr;
        tr.origin = a;
        tr.scale = 1.0 / l12;
        const Point2 d = b - a;
        tr.rotation = -std::atan2(d.x2, d.x1);
        if (tr.rotation == 0.0) tr.rotation = 0.0;  // drop a negative zero
        tr.relabel = perm;
        Point2 apex = tr.apply(c);
        if (apex.x2 < 0) {
            tr.reflect = true;
            apex.x2 = -apex.x2;
        }
        return {Triangle({0.0, 0.0}, {1.0, 0.0}, apex), tr};
    } while (std::next_permutation(perm.begin(), perm.end()));
    throw Error(ErrorCode::internal, "no canonical labeling found");
}

bool is_canonical(const Triangle& t, double tie_tol) {
    return t.vertex(0) == Point2{0.0, 0.0} && t.vertex(1) == Point2{1.0, 0.0} && t.vertex(2).x2 > 0 &&
           at_least(t.side_length(SideId::z2z3), t.side_length(SideId::z3z1), tie_tol) &&
           at_least(t.side_length(SideId::z3z1), t.side_length(SideId::z1z2), tie_tol);
}

SideId SideLabeling::side(SideRank r) const {
    switch (r) {
        case SideRank::shortest: return shortest;
        case SideRank::medium: return medium;
        case SideRank::longest: return longest;
    }
    return shortest;
}

bool SideLabeling::tied(SideId a, SideId b) const {
    const double la = lengths[index(a)];
    const double lb = lengths[index(b)];
    return std::abs(la - lb) <= tie_tolerance * std::max(la, lb);
}

SideLabeling label_sides(const Triangle& t, double tie_tol) {
    SideLabeling out;
    out.tie_tolerance = tie_tol;
    std::array<SideId, 3> order{SideId::z1z2, SideId::z2z3, SideId::z3z1};
    for (SideId s : order) out.lengths[index(s)] = t.side_length(s);
    std::stable_sort(order.begin(), order.end(),
                     [&](SideId a, SideId b) { return out.lengths[index(a)] < out.lengths[index(b)]; });
    out.shortest = order[0];
    out.medium = order[1];
    out.longest = order[2];
    return out;
}

const char* to_string(AngleClass c) {
    switch (c) {
        case AngleClass::acute: return "acute";
        case AngleClass::right: return "right";
        case AngleClass::obtuse: return "obtuse";
    }
    return "?";
}

const char* to_string(SymmetryClass c) {
    switch (c) {
        case SymmetryClass::scalene: return "scalene";
        case SymmetryClass::sub_equilateral: return "sub_equilateral";
        case SymmetryClass::super_equilateral: return "super_equilateral";
        case SymmetryClass::equilateral: return "equilateral";
        case SymmetryClass::other_isosceles: return "other_isosceles";
    }
    return "?";
}

TriangleClass classify(const Triangle& t, double tol) {
    constexpr double pi = std::numbers::pi;
    const std::array<double, 3> angles{t.angle(VertexId::z1), t.angle(VertexId::z2), t.angle(VertexId::z3)};
    TriangleClass out{};
    out.largest_angle = *std::max_element(angles.begin(), angles.end());
    const double right_gap = out.largest_angle - pi / 2;
    if (std::abs(right_gap) <= tol * pi) {
        out.angle_class = AngleClass::right;
    } else {
        out.angle_class = right_gap < 0 ? AngleClass::acute : AngleClass::obtuse;
    }

    const SideLabeling sides = label_sides(t, tol);
    std::array<bool, 3> tie{};  // tie[k]: side k ties with side k+1
    double min_gap = 1.0;
    for (int k = 0; k < 3; ++k) {
        const auto a = static_cast<SideId>(k);
        const auto b = static_cast<SideId>((k + 1) % 3);
        tie[k] = sides.tied(a, b);
        const double la = sides.lengths[k];
        const double lb = sides.lengths[(k + 1) % 3];
        min_gap = std::min(min_gap, std::abs(la - lb) / std::max(la, lb));
    }
    const int ties = tie[0] + tie[1] + tie[2];
    double distance = std::abs(right_gap);
    if (ties == 0) {
        out.symmetry_class = SymmetryClass::scalene;
        distance = std::min(distance, min_gap);
    } else if (ties >= 2) {
        out.symmetry_class = SymmetryClass::equilateral;
        distance = std::min(distance, min_gap);
    } else {
        // sides k and k+1 share vertex k+1, which is the apex
        const int k = tie[0] ? 0 : (tie[1] ? 1 : 2);
        const auto apex = static_cast<VertexId>((k + 1) % 3);
        out.apex = apex;
        const double apex_angle = angles[index(apex)];
        const double gap = apex_angle - pi / 3;
        if (std::abs(gap) <= tol * pi) {
            out.symmetry_class = SymmetryClass::other_isosceles;
        } else {
            out.symmetry_class = gap < 0 ? SymmetryClass::sub_equilateral : SymmetryClass::super_equilateral;
        }
        distance = std::min(distance, std::abs(gap));
    }
    out.boundary_distance = distance;
    return out;
}

Triangle homotopy(double t, const Triangle& t0, const Triangle& t1) {
    std::array<Point2, 3> v;
    for (int i = 0; i < 3; ++i) v[i] = (1.0 - t) * t0.vertex(i) + t * t1.vertex(i);
    return Triangle(v[0], v[1], v[2]);
}

BisectorFoot bisector_foot(const Triangle& t, VertexId v) {
    const int k = index(v);
    const Point2 a = t.vertex(k);
    const Point2 b = t.vertex((k + 1) % 3);
    const Point2 c = t.vertex((k + 2) % 3);
    const double lb = distance(a, b);
    const double lc = distance(a, c);
    const Point2 foot = (1.0 / (lb + lc)) * (lc * b + lb * c);
    return {foot, distance(a, foot)};
}

double bisector_length_formula(double l1, double l2, double alpha) {
    return 2.0 * l1 * l2 * std::cos(alpha / 2.0) / (l1 + l2);
}

PerpendicularFoot perpendicular_foot(const Triangle& t, VertexId from, SideId onto) {
    const auto [a, b] = t.endpoints(onto);
    const Point2 p = t.vertex(from);
    const Point2 d = b - a;
    const double s = dot(p - a, d) / dot(d, d);
    constexpr double eps = 1e-12;
    return {a + s * d, s, s > eps && s < 1.0 - eps};
}

Polygon clip_halfplane(const Polygon& poly, Point2 base, Point2 normal) {
    Polygon out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 p = poly[i];
        const Point2 q = poly[(i + 1) % n];
        const double dp = dot(p - base, normal);
        const double dq = dot(q - base, normal);
        if (dp >= 0) out.push_back(p);
        if ((dp >= 0) != (dq >= 0)) {
            const double s = dp / (dp - dq);
            out.push_back(p + s * (q - p));
        }
    }
    return out;
}

Polygon clip_convex(const Polygon& poly, const Polygon& convex_ccw) {
    Polygon out = poly;
    const std::size_t n = convex_ccw.size();
    for (std::size_t i = 0; i < n && !out.empty(); ++i) {
        const Point2 a = convex_ccw[i];
        const Point2 b = convex_ccw[(i + 1) % n];
        out = clip_halfplane(out, a, rotate90(b - a));
    }
    return out;
}

double polygon_area(const Polygon& poly) {
    double twice = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) twice += cross(poly[i], poly[(i + 1) % poly.size()]);
    return 0.5 * twice;
}

Polygon triangle_polygon(const Triangle& t) { return {t.vertex(0), t.vertex(1), t.vertex(2)}; }

Point2 reflect_across_line(Point2 p, Point2 base, Point2 direction) {
    const Point2 d = p - base;
    const Point2 along = dot(d, direction) * direction;
    return base + along - (d - along);
}

namespace {

Polygon reflect_polygon(const Polygon& poly, Point2 base, Point2 direction) {
    Polygon out;
    out.reserve(poly.size());
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) out.push_back(reflect_across_line(*it, base, direction));
    return out;
}

}  // namespace

ReflectionAxes reflection_axes(const Triangle& t) {
    const Polygon body = triangle_polygon(t);
    const Point2 z1 = t.vertex(0);
    const Point2 z2 = t.vertex(1);
    const Point2 z3 = t.vertex(2);

    ReflectionAxes axes;
    axes.shortest.base_point = 0.5 * (z1 + z2);
    axes.shortest.direction = rotate90(normalized(z2 - z1));
    axes.shortest.cap = clip_halfplane(body, axes.shortest.base_point, z2 - z1);

    axes.medium.base_point = 0.5 * (z3 + z1);
    axes.medium.direction = rotate90(normalized(z1 - z3));
    const Polygon upper = clip_halfplane(body, axes.medium.base_point, z3 - z1);
    axes.medium.cap = reflect_polygon(upper, axes.medium.base_point, axes.medium.direction);
    return axes;
}

CapContainment check_cap_containment(const Triangle& t, const ReflectionAxis& axis) {
    double worst = 0.0;
    for (const Point2& p : axis.cap) {
        const Point2 q = axis.reflect(p);
        for (int k = 0; k < 3; ++k) {
            const Point2 a = t.vertex(k);
            const Point2 b = t.vertex((k + 1) % 3);
            worst = std::max(worst, -cross(b - a, q - a) / distance(a, b));
        }
    }
    return {worst <= 1e-12, worst};
}

DirectionFrame direction_frame(const Triangle& t) {
    DirectionFrame f;
    f.tau_S = normalized(t.vertex(1) - t.vertex(0));
    f.tau_M = normalized(t.vertex(0) - t.vertex(2));
    f.tau_L = normalized(t.vertex(2) - t.vertex(1));
    f.n_S = rotate90(f.tau_S);
    f.n_M = rotate90(f.tau_M);
    f.n_L = rotate90(f.tau_L);
    return f;
}

Polygon bisector_kite(const Triangle& t, VertexId v) {
    const Point2 apex = t.vertex(v);
    const Point2 dir = normalized(bisector_foot(t, v).foot - apex);
    const Polygon body = triangle_polygon(t);
    return clip_convex(body, reflect_polygon(body, apex, dir));
}

}  // namespace hotspots
