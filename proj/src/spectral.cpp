#include "hotspots/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

#include <Eigen/QR>

#include "hotspots/error.hpp"

namespace hotspots {

namespace {

constexpr Bary kCentroid{1.0 / 3, 1.0 / 3, 1.0 / 3};

Bary clamp_bary(std::array<double, 3> l) {
    for (double& x : l) x = std::max(x, 0.0);
    const double s = l[0] + l[1] + l[2];
    return {l[0] / s, l[1] / s, l[2] / s};
}

// Nearest point of the closed triangle for points slightly outside.
Point2 pull_inside(const Triangle& t, Point2 p) {
    if (t.contains(p, 0.0)) return p;
    Point2 best = t.vertex(0);
    double best_d = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k) {
        const auto [a, b] = t.endpoints(static_cast<SideId>(k));
        const Point2 d = b - a;
        const double s = std::clamp(dot(p - a, d) / dot(d, d), 0.0, 1.0);
        const Point2 q = a + s * d;
        if (distance(p, q) < best_d) {
            best_d = distance(p, q);
            best = q;
        }
    }
    return best;
}

std::optional<Location> locate_clamped(const Mesh& mesh, Point2 p) {
    if (auto loc = locate(mesh, p)) return loc;
    if (!mesh.domain) return std::nullopt;
    const Point2 q = pull_inside(*mesh.domain, p);
    if (auto loc = locate(mesh, q)) return loc;
    // rounding at the domain boundary; fall back to barycentric clamping
    const Bary l = clamp_bary(mesh.domain->barycentric(q));
    return locate(mesh, l[0] * mesh.domain->vertex(0) + l[1] * mesh.domain->vertex(1) + l[2] * mesh.domain->vertex(2));
}

Bary element_bary(const ElementGeometry& g, Point2 p) {
    Bary l;
    for (int k = 0; k < 3; ++k) l[k] = dot(g.grad_bary[k], p - g.v[(k + 1) % 3]);
    return l;
}

bool in_convex(const Polygon& poly, Point2 p, double tol) {
    const std::size_t n = poly.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = poly[i], b = poly[(i + 1) % n];
        const Point2 e = b - a;
        const double len = norm(e);
        if (len <= tol) continue;  // clipping leaves near-duplicate vertices
        if (cross(e, p - a) < -tol * len) return false;
    }
    return true;
}

template <class Fn>
void for_each_quadrature_point(const Mesh& mesh, Fn&& fn) {
    const auto rule = quadrature(4);
    for (int e = 0; e < mesh.element_count(); ++e) {
        const ElementGeometry g = element_geometry(mesh, e);
        for (const auto& q : rule) fn(e, q.bary, g.point(q.bary));
    }
}

// Quadratic least-squares fit to the nodal values within `radius` of p.
Hessian2 fitted_hessian(const EigenField& f, Point2 p, double radius) {
    const Mesh& mesh = *f.mesh;
    std::vector<int> near;
    for (int i = 0; i < mesh.node_count(); ++i) {
        if (distance(mesh.nodes[i], p) <= radius) near.push_back(i);
    }
    if (near.size() < 6) return {};
    Eigen::MatrixXd A(near.size(), 6);
    Eigen::VectorXd b(near.size());
    for (std::size_t k = 0; k < near.size(); ++k) {
        const Point2 d = (mesh.nodes[near[k]] - p) * (1.0 / radius);
        A.row(k) << 1.0, d.x1, d.x2, d.x1 * d.x1, d.x1 * d.x2, d.x2 * d.x2;
        b[k] = f.u[near[k]];
    }
    const Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
    const double s = 1.0 / (radius * radius);
    return {2.0 * c[3] * s, c[4] * s, 2.0 * c[5] * s};
}

double relative_h2(const EigenField& f) {
    const double r = f.h() / f.triangle().diameter();
    return r * r;
}

}  // namespace

int EigenField::vertex_node(VertexId v) const {
    const Point2 z = triangle().vertex(v);
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < mesh->vertex_node_count; ++i) {
        const double d = distance(mesh->nodes[i], z);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

std::optional<double> EigenField::value(Point2 p) const {
    const auto loc = locate(*mesh, p);
    if (!loc) return std::nullopt;
    return evaluate(*mesh, u, loc->element, loc->barycentric);
}

std::optional<Point2> EigenField::grad(Point2 p) const {
    const auto loc = locate(*mesh, p);
    if (!loc) return std::nullopt;
    return gradient(*mesh, u, loc->element, loc->barycentric);
}

double EigenField::max_abs() const { return u.size() ? u.cwiseAbs().maxCoeff() : 0.0; }

double EigenField::max_grad() const {
    double out = 0.0;
    const auto rule = quadrature(4);
    for (int e = 0; e < mesh->element_count(); ++e) {
        for (const Bary& l : {Bary{1, 0, 0}, Bary{0, 1, 0}, Bary{0, 0, 1}}) {
            out = std::max(out, norm(gradient(*mesh, u, e, l)));
        }
        for (const auto& q : rule) out = std::max(out, norm(gradient(*mesh, u, e, q.bary)));
    }
    return out;
}

void normalize_sign(EigenField& f, double vertex_tol) {
    const double scale = f.max_abs();
    const double v3 = f.vertex_value(VertexId::z3);
    double ref = v3;
    if (std::abs(v3) <= vertex_tol * scale) {
        ref = 0.0;
        for (VertexId v : {VertexId::z1, VertexId::z2, VertexId::z3}) {
            const double x = f.vertex_value(v);
            if (std::abs(x) > std::abs(ref)) ref = x;
        }
    }
    if (ref < 0.0) {
        f.u = -f.u;
        f.flipped = !f.flipped;
    }
}

EigenField make_field(Mesh mesh, Eigen::VectorXd u, double eigenvalue, double vertex_tol) {
    if (!mesh.domain) throw Error(ErrorCode::invalid_argument, "field analysis needs a single-triangle mesh");
    if (u.size() != mesh.node_count()) throw Error(ErrorCode::invalid_argument, "field size does not match mesh");
    EigenField f;
    f.mesh = std::make_shared<const Mesh>(std::move(mesh));
    f.u = std::move(u);
    f.eigenvalue = eigenvalue;
    normalize_sign(f, vertex_tol);
    return f;
}

EigenField make_field(const NeumannResult& r, double vertex_tol) { return make_field(r.mesh, r.u2, r.mu2, vertex_tol); }

std::array<VertexSign, 3> vertex_values(const EigenField& f, double vertex_tol) {
    const double scale = f.max_abs();
    std::array<VertexSign, 3> out;
    for (int k = 0; k < 3; ++k) {
        const double x = f.vertex_value(static_cast<VertexId>(k));
        out[k].value = x;
        out[k].sign = std::abs(x) <= vertex_tol * scale ? '0' : (x > 0 ? '+' : '-');
    }
    return out;
}

std::string sign_pattern(const std::array<VertexSign, 3>& v) { return {v[0].sign, v[1].sign, v[2].sign}; }

std::string describe(const Locus& l) {
    switch (l.kind) {
        case LocusKind::vertex: return std::string("vertex ") + to_string(static_cast<VertexId>(l.id));
        case LocusKind::side: return std::string("side ") + to_string(static_cast<SideId>(l.id));
        case LocusKind::interior: return "interior";
    }
    return "?";
}

Locus classify_point(const Triangle& t, Point2 p, double radius) {
    Locus out;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k) {
        const double d = distance(p, t.vertex(k));
        if (d <= radius && d < best) {
            best = d;
            out = {LocusKind::vertex, k, 0.0};
        }
    }
    if (out.kind == LocusKind::vertex) return out;
    for (int k = 0; k < 3; ++k) {
        const auto [a, b] = t.endpoints(static_cast<SideId>(k));
        const Point2 e = b - a;
        const double s = dot(p - a, e) / dot(e, e);
        if (s < 0.0 || s > 1.0) continue;
        const double d = std::abs(cross(e, p - a)) / norm(e);
        if (d <= radius && d < best) {
            best = d;
            out = {LocusKind::side, k, s};
        }
    }
    return out;
}

const char* to_string(CriticalClass c) {
    switch (c) {
        case CriticalClass::saddle: return "saddle";
        case CriticalClass::local_max: return "local_max";
        case CriticalClass::local_min: return "local_min";
        case CriticalClass::degenerate: return "degenerate";
    }
    return "?";
}

CriticalPointReport critical_points(const EigenField& f, const AnalysisOptions& opt) {
    const Mesh& mesh = *f.mesh;
    const Triangle& t = f.triangle();
    const double h = f.h();
    CriticalPointReport rep;
    rep.grad_tol = opt.grad_tol;
    rep.cluster_radius = opt.cluster_factor * h;
    rep.max_gradient = f.max_grad();
    const double gmax = rep.max_gradient;

    struct Candidate {
        Point2 p;
        double g;
    };
    std::vector<Candidate> cands;
    auto near_vertex = [&](Point2 p) {
        for (int k = 0; k < 3; ++k) {
            if (distance(p, t.vertex(k)) <= h) return true;
        }
        return false;
    };
    auto consider = [&](Point2 p, bool on_neumann_side) {
        p = pull_inside(t, p);
        if (near_vertex(p)) return;
        const auto loc = locate_clamped(mesh, p);
        if (!loc) return;
        const Point2 g = gradient(mesh, f.u, loc->element, loc->barycentric);
        double gn = norm(g);
        if (on_neumann_side) {
            // only the tangential part is meaningful on a Neumann side
            const Locus side = classify_point(t, p, 0.5 * h);
            if (side.kind == LocusKind::side) {
                const auto [a, b] = t.endpoints(static_cast<SideId>(side.id));
                gn = std::abs(dot(g, normalized(b - a)));
            }
        }
        if (gn <= opt.grad_tol * gmax) cands.push_back({p, gn});
    };

    constexpr double slack = 0.25;
    if (mesh.order == 2) {
        for (int e = 0; e < mesh.element_count(); ++e) {
            const Hessian2 H = hessian(mesh, f.u, e);
            const double det = H.xx * H.yy - H.xy * H.xy;
            const double scale = H.xx * H.xx + H.yy * H.yy + 2 * H.xy * H.xy;
            if (!(std::abs(det) > 1e-12 * scale)) continue;
            const ElementGeometry g = element_geometry(mesh, e);
            const Point2 c = g.point(kCentroid);
            const Point2 gc = gradient(mesh, f.u, e, kCentroid);
            const Point2 d{-(H.yy * gc.x1 - H.xy * gc.x2) / det, -(-H.xy * gc.x1 + H.xx * gc.x2) / det};
            const Point2 x = c + d;
            const Bary l = element_bary(g, x);
            if (std::min({l[0], l[1], l[2]}) < -slack) continue;
            consider(x, false);
        }
        for (const BoundaryEdge& be : mesh.boundary_edges) {
            const double ua = f.u[be.a], um = f.u[be.midpoint], ub = f.u[be.b];
            const double den = 4.0 * (ua - 2.0 * um + ub);
            if (den == 0.0) continue;
            const double s = (3.0 * ua - 4.0 * um + ub) / den;
            if (s < -slack || s > 1.0 + slack) continue;
            const Point2 pa = mesh.nodes[be.a], pb = mesh.nodes[be.b];
            consider(pa + std::clamp(s, 0.0, 1.0) * (pb - pa), true);
        }
    } else {
        // piecewise linear: the edge slopes change sign across a boundary node; the
        // root of the slope interpolated between the two edge midpoints is the candidate
        struct Slope {
            double du;
            Point2 mid;
            int tag;
        };
        std::unordered_map<int, std::vector<Slope>> slopes;
        for (const BoundaryEdge& be : mesh.boundary_edges) {
            const Point2 pa = mesh.nodes[be.a], pb = mesh.nodes[be.b];
            const Slope sl{(f.u[be.b] - f.u[be.a]) / distance(pa, pb), 0.5 * (pa + pb), be.tag};
            slopes[be.a].push_back(sl);
            slopes[be.b].push_back(sl);
        }
        for (const auto& [node, s] : slopes) {
            for (std::size_t i = 0; i < s.size(); ++i) {
                for (std::size_t j = i + 1; j < s.size(); ++j) {
                    if (s[i].tag != s[j].tag || s[i].du * s[j].du > 0.0) continue;
                    const double den = s[i].du - s[j].du;
                    const double w = den == 0.0 ? 0.5 : s[i].du / den;
                    const Point2 p = pull_inside(t, s[i].mid + w * (s[j].mid - s[i].mid));
                    if (!near_vertex(p)) cands.push_back({p, 0.0});
                }
            }
        }
    }
    rep.candidates = static_cast<int>(cands.size());

    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.g != b.g) return a.g < b.g;
        if (a.p.x1 != b.p.x1) return a.p.x1 < b.p.x1;
        return a.p.x2 < b.p.x2;
    });
    const double umax = f.max_abs();
    const double thr = 1e-6 * umax / (h * h);
    for (const Candidate& c : cands) {
        const bool merged = std::any_of(rep.points.begin(), rep.points.end(), [&](const CriticalPoint& q) {
            return distance(q.location, c.p) <= rep.cluster_radius;
        });
        if (merged) continue;
        CriticalPoint cp;
        cp.location = c.p;
        cp.gradient_norm = c.g;
        cp.locus = classify_point(t, c.p, 0.5 * h);
        const Hessian2 H = mesh.order == 2 ? hessian(mesh, f.u, locate_clamped(mesh, c.p)->element)
                                           : fitted_hessian(f, c.p, 2.5 * h);
        const double mean = 0.5 * (H.xx + H.yy);
        const double rad = std::hypot(0.5 * (H.xx - H.yy), H.xy);
        const double ev[2] = {mean - rad, mean + rad};
        for (int k = 0; k < 2; ++k) cp.hessian_signs[k] = ev[k] > thr ? 1 : (ev[k] < -thr ? -1 : 0);
        const auto [s0, s1] = cp.hessian_signs;
        if (s0 == -1 && s1 == 1) {
            cp.kind = CriticalClass::saddle;
        } else if (s0 == -1 && s1 == -1) {
            cp.kind = CriticalClass::local_max;
        } else if (s0 == 1 && s1 == 1) {
            cp.kind = CriticalClass::local_min;
        }
        rep.points.push_back(cp);
    }
    return rep;
}

NodalLine nodal_line(const EigenField& f) {
    const Mesh& mesh = *f.mesh;
    const double snap = 1e-8 * f.max_abs();
    auto positive = [&](int i) { return f.u[i] > -snap; };

    std::unordered_map<std::uint64_t, int> crossing_id;
    std::vector<Point2> points;
    std::vector<std::vector<int>> adj;
    auto crossing = [&](int a, int b) {
        const std::uint64_t key = edge_key(a, b);
        auto it = crossing_id.find(key);
        if (it != crossing_id.end()) return it->second;
        const double va = f.u[a], vb = f.u[b];
        const double s = std::clamp(va / (va - vb), 0.0, 1.0);
        const int id = static_cast<int>(points.size());
        points.push_back(mesh.nodes[a] + s * (mesh.nodes[b] - mesh.nodes[a]));
        adj.emplace_back();
        crossing_id.emplace(key, id);
        return id;
    };
    auto march = [&](int a, int b, int c) {
        const int tri[3] = {a, b, c};
        int hits[2], n = 0;
        for (int k = 0; k < 3; ++k) {
            const int p = tri[k], q = tri[(k + 1) % 3];
            if (positive(p) != positive(q)) hits[n++] = crossing(p, q);
        }
        if (n == 2) {
            adj[hits[0]].push_back(hits[1]);
            adj[hits[1]].push_back(hits[0]);
        }
    };
    for (int e = 0; e < mesh.element_count(); ++e) {
        const auto d = mesh.element_dofs(e);
        if (mesh.order == 2) {
            march(d[0], d[3], d[5]);
            march(d[3], d[1], d[4]);
            march(d[5], d[4], d[2]);
            march(d[3], d[4], d[5]);
        } else {
            march(d[0], d[1], d[2]);
        }
    }

    NodalLine out;
    std::vector<bool> seen(points.size(), false);
    auto walk = [&](int start) {
        std::vector<int> ids;
        int prev = -1, cur = start;
        while (true) {
            seen[cur] = true;
            ids.push_back(cur);
            int next = -1;
            for (int n : adj[cur]) {
                if (n != prev && !seen[n]) {
                    next = n;
                    break;
                }
            }
            if (next < 0) break;
            prev = cur;
            cur = next;
        }
        return ids;
    };
    std::vector<bool> open;
    auto add = [&](const std::vector<int>& ids, bool is_open) {
        std::vector<Point2> line;
        for (int id : ids) line.push_back(points[id]);
        if (!is_open && ids.size() > 2) line.push_back(points[ids.front()]);
        out.components.push_back(std::move(line));
        open.push_back(is_open);
    };
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!seen[i] && adj[i].size() == 1) add(walk(static_cast<int>(i)), true);
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!seen[i] && !adj[i].empty()) add(walk(static_cast<int>(i)), false);
    }
    out.component_count = static_cast<int>(out.components.size());
    out.anomaly = out.component_count > 1;
    if (out.components.empty()) return out;

    auto length = [](const std::vector<Point2>& l) {
        double s = 0.0;
        for (std::size_t i = 1; i < l.size(); ++i) s += distance(l[i - 1], l[i]);
        return s;
    };
    std::size_t main = 0;
    for (std::size_t c = 1; c < out.components.size(); ++c) {
        if (length(out.components[c]) > length(out.components[main])) main = c;
    }
    const auto& line = out.components[main];
    if (open[main]) {
        const double h = f.h();
        for (Point2 p : {line.front(), line.back()}) out.endpoints.push_back({p, classify_point(f.triangle(), p, h)});
    }
    return out;
}

MonotonicityReport monotonicity(const EigenField& f, Point2 direction, const AnalysisOptions& opt) {
    MonotonicityReport rep;
    rep.direction = normalized(direction);
    const double g = f.max_grad();
    rep.tolerance = opt.mono_tol + opt.allowance * relative_h2(f);
    rep.min_derivative = std::numeric_limits<double>::infinity();
    rep.max_derivative = -std::numeric_limits<double>::infinity();
    const Mesh& mesh = *f.mesh;
    const Triangle& t = f.triangle();
    std::vector<Point2> blunt;
    for (VertexId v : {VertexId::z1, VertexId::z2, VertexId::z3}) {
        if (t.angle(v) > std::numbers::pi / 2 + 1e-12) blunt.push_back(t.vertex(v));
    }
    const double exclusion = opt.blunt_exclusion * f.h();
    auto sample = [&](int e, const Bary& l, Point2 x) {
        for (Point2 b : blunt) {
            if (distance(x, b) < exclusion) {
                ++rep.excluded;
                return;
            }
        }
        const double v = dot(gradient(mesh, f.u, e, l), rep.direction) / g;
        ++rep.samples;
        rep.min_derivative = std::min(rep.min_derivative, v);
        rep.max_derivative = std::max(rep.max_derivative, v);
        if (v < -rep.tolerance) rep.violating_points.push_back(x);
    };
    for_each_quadrature_point(mesh, sample);
    return rep;
}

RotationMargin rotation_margin(const EigenField& f, Point2 p, const std::function<bool(Point2)>& region) {
    RotationMargin rep;
    rep.min = std::numeric_limits<double>::infinity();
    rep.max = -std::numeric_limits<double>::infinity();
    const double scale = f.max_grad() * f.triangle().diameter();
    for_each_quadrature_point(*f.mesh, [&](int e, const Bary& l, Point2 x) {
        if (!region(x)) return;
        const Point2 g = gradient(*f.mesh, f.u, e, l);
        const double r = (-(x.x2 - p.x2) * g.x1 + (x.x1 - p.x1) * g.x2) / scale;
        ++rep.samples;
        rep.min = std::min(rep.min, r);
        rep.max = std::max(rep.max, r);
    });
    return rep;
}

DominanceReport reflection_dominance(const EigenField& f, const ReflectionAxis& axis, const AnalysisOptions& opt) {
    DominanceReport rep;
    const Triangle& t = f.triangle();
    const double umax = f.max_abs();
    const double diam = t.diameter();
    rep.tolerance = opt.dominance_tol + opt.allowance * relative_h2(f);
    rep.min_difference = std::numeric_limits<double>::infinity();
    for_each_quadrature_point(*f.mesh, [&](int e, const Bary& l, Point2 x) {
        if (!in_convex(axis.cap, x, 1e-12 * diam)) return;
        const Point2 y = axis.reflect(x);
        if (!t.contains(y, 0.0)) {
            const double excess = distance(y, pull_inside(t, y));
            rep.worst_excess = std::max(rep.worst_excess, excess);
            if (excess > 1e-12 * diam) rep.geometry_anomaly = true;
        }
        const auto loc = locate_clamped(*f.mesh, y);
        if (!loc) return;
        const double d = (evaluate(*f.mesh, f.u, loc->element, loc->barycentric) - evaluate(*f.mesh, f.u, e, l)) / umax;
        ++rep.samples;
        rep.min_difference = std::min(rep.min_difference, d);
        if (d < -rep.tolerance) rep.violating_points.push_back(x);
    });
    if (rep.samples == 0) rep.min_difference = 0.0;
    return rep;
}

MovingPlaneProfile moving_plane_profile(const EigenField& f, int count, const AnalysisOptions& opt) {
    MovingPlaneProfile out;
    const Triangle& t = f.triangle();
    const Point2 z1 = t.vertex(VertexId::z1), z2 = t.vertex(VertexId::z2), z3 = t.vertex(VertexId::z3);
    out.tolerance = opt.dominance_tol + opt.allowance * relative_h2(f);
    if (!(distance(z3, z1) < distance(z3, z2) * (1.0 - kTieTolerance))) {
        out.applicable = false;
        return out;
    }
    // x1 runs along z1 -> z2
    const Point2 e1 = normalized(z2 - z1);
    auto coord = [&](Point2 x) { return dot(x - z1, e1); };
    const double lo = coord(z3), hi = 0.5 * (coord(z1) + coord(z2));
    const double umax = f.max_abs();
    struct Sample {
        int e;
        Bary l;
        Point2 x;
        double s;
    };
    std::vector<Sample> samples;
    for_each_quadrature_point(*f.mesh, [&](int e, const Bary& l, Point2 x) { samples.push_back({e, l, x, coord(x)}); });
    for (int k = 0; k < count; ++k) {
        const double lambda = count == 1 ? lo : lo + (hi - lo) * k / (count - 1);
        MovingPlaneRow row;
        row.lambda = lambda;
        row.min_w = std::numeric_limits<double>::infinity();
        for (const Sample& s : samples) {
            if (s.s <= lambda) continue;
            const Point2 y = s.x + (2.0 * (lambda - s.s)) * e1;
            if (!t.contains(y, 0.0)) continue;
            const auto loc = locate_clamped(*f.mesh, y);
            if (!loc) continue;
            const double w = (evaluate(*f.mesh, f.u, loc->element, loc->barycentric) - evaluate(*f.mesh, f.u, s.e, s.l)) / umax;
            row.min_w = std::min(row.min_w, w);
            ++row.samples;
        }
        if (row.samples > 0 && row.min_w < -out.tolerance) out.holds = false;
        out.rows.push_back(row);
    }
    return out;
}

FoldReport fold_antisymmetry(const EigenField& f, VertexId v) {
    FoldReport rep;
    const Triangle& t = f.triangle();
    const Point2 apex = t.vertex(v);
    const Point2 dir = normalized(bisector_foot(t, v).foot - apex);
    const Polygon kite = bisector_kite(t, v);
    rep.kite_area = polygon_area(kite);
    const double umax = f.max_abs();
    const double diam = t.diameter();
    for_each_quadrature_point(*f.mesh, [&](int e, const Bary& l, Point2 x) {
        if (!in_convex(kite, x, 1e-12 * diam)) return;
        const auto loc = locate_clamped(*f.mesh, reflect_across_line(x, apex, dir));
        if (!loc) return;
        const double w = evaluate(*f.mesh, f.u, e, l) + evaluate(*f.mesh, f.u, loc->element, loc->barycentric);
        rep.sup_w = std::max(rep.sup_w, std::abs(w) / umax);
        ++rep.samples;
    });
    return rep;
}

ExtremaReport extrema_location(const EigenField& f) {
    ExtremaReport rep;
    const Mesh& mesh = *f.mesh;
    int imax = 0, imin = 0;
    for (int i = 1; i < mesh.node_count(); ++i) {
        if (f.u[i] > f.u[imax]) imax = i;
        if (f.u[i] < f.u[imin]) imin = i;
    }
    const Triangle& t = f.triangle();
    const double h = f.h();
    rep.argmax = mesh.nodes[imax];
    rep.argmin = mesh.nodes[imin];
    rep.max = f.u[imax];
    rep.min = f.u[imin];
    rep.max_locus = classify_point(t, rep.argmax, h);
    rep.min_locus = classify_point(t, rep.argmin, h);
    rep.anomaly = rep.max_locus.kind == LocusKind::interior || rep.min_locus.kind == LocusKind::interior;
    if (rep.max_locus.kind == LocusKind::vertex && rep.min_locus.kind == LocusKind::vertex) {
        const SideLabeling labels = label_sides(t);
        for (int k = 0; k < 3; ++k) {
            const SideId s = static_cast<SideId>(k);
            if (!labels.tied(s, labels.longest) && s != labels.longest) continue;
            const int a = k, b = (k + 1) % 3;
            const int p = rep.max_locus.id, q = rep.min_locus.id;
            if ((p == a && q == b) || (p == b && q == a)) rep.at_longest_side_endpoints = true;
        }
    }
    return rep;
}

}  // namespace hotspots
