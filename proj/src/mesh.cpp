#include "hotspots/mesh.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <string>

#include "hotspots/error.hpp"

namespace hotspots {

std::uint64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

int Mesh::midpoint_index(int a, int b) const {
    auto it = edge_midpoint.find(edge_key(a, b));
    return it == edge_midpoint.end() ? -1 : it->second;
}

double Mesh::h() const {
    double out = 0.0;
    for (const auto& e : elements) {
        for (int k = 0; k < 3; ++k) out = std::max(out, distance(nodes[e[k]], nodes[e[(k + 1) % 3]]));
    }
    return out;
}

namespace {

// Row-major lattice over {(a, b) : a, b >= 0, a + b <= n}, rows indexed by b.
struct Lattice {
    int n;
    int offset(int b) const { return b * (n + 1) - b * (b - 1) / 2; }
    int operator()(int a, int b) const { return offset(b) + a; }
    int size() const { return (n + 1) * (n + 2) / 2; }
};

Point2 lattice_point(const Triangle& t, int a, int b, int n) {
    const Point2 z1 = t.vertex(0);
    const Point2 z2 = t.vertex(1);
    const Point2 z3 = t.vertex(2);
    const double w1 = n - a - b;
    return {(w1 * z1.x1 + a * z2.x1 + b * z3.x1) / n, (w1 * z1.x2 + a * z2.x2 + b * z3.x2) / n};
}

std::array<double, 3> local_barycentric(Point2 p, Point2 v0, Point2 v1, Point2 v2) {
    const double twice = cross(v1 - v0, v2 - v0);
    const double l0 = cross(v1 - p, v2 - p) / twice;
    const double l1 = cross(v2 - p, v0 - p) / twice;
    return {l0, l1, 1.0 - l0 - l1};
}

std::optional<Location> try_element(const Mesh& mesh, int e, Point2 p, double tol) {
    const auto& el = mesh.elements[e];
    auto l = local_barycentric(p, mesh.nodes[el[0]], mesh.nodes[el[1]], mesh.nodes[el[2]]);
    if (std::min({l[0], l[1], l[2]}) < -tol) return std::nullopt;
    double sum = 0.0;
    for (double& v : l) {
        v = std::clamp(v, 0.0, 1.0);
        sum += v;
    }
    for (double& v : l) v /= sum;
    return Location{e, l};
}

}  // namespace

Mesh refine(const Triangle& t, int level, int order) {
    if (order != 1 && order != 2) {
        throw Error(ErrorCode::invalid_argument, "element order must be 1 or 2, got " + std::to_string(order));
    }
    if (level < 0) throw Error(ErrorCode::invalid_argument, "refinement level must be nonnegative");
    if (level > kMaxLevel) {
        throw Error(ErrorCode::resource_limit,
                    "refinement level " + std::to_string(level) + " exceeds the limit " + std::to_string(kMaxLevel));
    }

    Mesh mesh;
    mesh.level = level;
    mesh.order = order;
    mesh.domain = t;
    const int n = 1 << level;
    const int N = order * n;
    mesh.subdivisions = n;
    const Lattice vertices{n};
    const Lattice grid{N};

    // grid index -> node index
    std::vector<int> node_of(grid.size(), -1);
    mesh.nodes.reserve(grid.size());
    for (int b = 0; b <= n; ++b) {
        for (int a = 0; a + b <= n; ++a) {
            node_of[grid(order * a, order * b)] = static_cast<int>(mesh.nodes.size());
            mesh.nodes.push_back(lattice_point(t, order * a, order * b, N));
        }
    }
    mesh.vertex_node_count = static_cast<int>(mesh.nodes.size());
    if (order == 2) {
        for (int B = 0; B <= N; ++B) {
            for (int A = 0; A + B <= N; ++A) {
                if (A % 2 == 0 && B % 2 == 0) continue;
                const int id = static_cast<int>(mesh.nodes.size());
                node_of[grid(A, B)] = id;
                mesh.nodes.push_back(lattice_point(t, A, B, N));
                int p, q;
                if (B % 2 == 0) {
                    p = vertices((A - 1) / 2, B / 2);
                    q = vertices((A + 1) / 2, B / 2);
                } else if (A % 2 == 0) {
                    p = vertices(A / 2, (B - 1) / 2);
                    q = vertices(A / 2, (B + 1) / 2);
                } else {
                    p = vertices((A - 1) / 2, (B + 1) / 2);
                    q = vertices((A + 1) / 2, (B - 1) / 2);
                }
                mesh.edge_midpoint.emplace(edge_key(p, q), id);
            }
        }
    }

    mesh.node_tags.assign(mesh.nodes.size(), 0);
    for (int B = 0; B <= N; ++B) {
        for (int A = 0; A + B <= N; ++A) {
            std::uint8_t tags = 0;
            if (B == 0) tags |= 1u << index(SideId::z1z2);
            if (A + B == N) tags |= 1u << index(SideId::z2z3);
            if (A == 0) tags |= 1u << index(SideId::z3z1);
            mesh.node_tags[node_of[grid(A, B)]] = tags;
        }
    }

    auto g = [&](int A, int B) { return node_of[grid(A, B)]; };
    mesh.up_element.assign(mesh.vertex_node_count, -1);
    mesh.down_element.assign(mesh.vertex_node_count, -1);
    mesh.elements.reserve(static_cast<std::size_t>(n) * n);
    mesh.dofs.reserve(static_cast<std::size_t>(n) * n * mesh.dofs_per_element());
    for (int b = 0; b < n; ++b) {
        for (int a = 0; a + b < n; ++a) {
            mesh.up_element[vertices(a, b)] = mesh.element_count();
            const std::array<int, 3> up{vertices(a, b), vertices(a + 1, b), vertices(a, b + 1)};
            mesh.elements.push_back(up);
            mesh.dofs.insert(mesh.dofs.end(), up.begin(), up.end());
            if (order == 2) {
                mesh.dofs.push_back(g(2 * a + 1, 2 * b));
                mesh.dofs.push_back(g(2 * a + 1, 2 * b + 1));
                mesh.dofs.push_back(g(2 * a, 2 * b + 1));
            }
            if (a + b + 2 <= n) {
                mesh.down_element[vertices(a, b)] = mesh.element_count();
                const std::array<int, 3> down{vertices(a + 1, b), vertices(a + 1, b + 1), vertices(a, b + 1)};
                mesh.elements.push_back(down);
                mesh.dofs.insert(mesh.dofs.end(), down.begin(), down.end());
                if (order == 2) {
                    mesh.dofs.push_back(g(2 * a + 2, 2 * b + 1));
                    mesh.dofs.push_back(g(2 * a + 1, 2 * b + 2));
                    mesh.dofs.push_back(g(2 * a + 1, 2 * b + 1));
                }
            }
        }
    }

    auto mid = [&](int A, int B) { return order == 2 ? g(A, B) : -1; };
    for (int a = 0; a < n; ++a) {
        mesh.boundary_edges.push_back({vertices(a, 0), vertices(a + 1, 0), mid(2 * a + 1, 0), index(SideId::z1z2)});
    }
    for (int b = 0; b < n; ++b) {
        mesh.boundary_edges.push_back({vertices(n - b, b), vertices(n - b - 1, b + 1),
                                       mid(2 * (n - b) - 1, 2 * b + 1), index(SideId::z2z3)});
    }
    for (int k = 0; k < n; ++k) {
        mesh.boundary_edges.push_back(
            {vertices(0, n - k), vertices(0, n - k - 1), mid(0, 2 * (n - k) - 1), index(SideId::z3z1)});
    }
    return mesh;
}

namespace {

// Merges part meshes on bit-identical node coordinates. tag_of(part, tag)
// maps a part boundary tag to the glued tag, or -1 for interior seams.
Mesh glue(const std::vector<Mesh>& parts, int level, int order, const std::function<int(std::size_t, int)>& tag_of) {
    Mesh mesh;
    mesh.level = level;
    mesh.order = order;
    std::map<std::pair<std::uint64_t, std::uint64_t>, int> merged;
    std::vector<std::vector<int>> remap(parts.size());
    auto merge_range = [&](bool vertex_pass) {
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const Mesh& part = parts[i];
            remap[i].resize(part.nodes.size(), -1);
            const int lo = vertex_pass ? 0 : part.vertex_node_count;
            const int hi = vertex_pass ? part.vertex_node_count : part.node_count();
            for (int k = lo; k < hi; ++k) {
                const Point2 p = part.nodes[k];
                // + 0.0 folds negative zero
                const auto key = std::make_pair(std::bit_cast<std::uint64_t>(p.x1 + 0.0),
                                                std::bit_cast<std::uint64_t>(p.x2 + 0.0));
                auto [it, inserted] = merged.emplace(key, mesh.node_count());
                if (inserted) mesh.nodes.push_back(p);
                remap[i][k] = it->second;
            }
        }
    };
    merge_range(true);
    mesh.vertex_node_count = mesh.node_count();
    merge_range(false);

    for (std::size_t i = 0; i < parts.size(); ++i) {
        const Mesh& part = parts[i];
        for (const auto& e : part.elements) mesh.elements.push_back({remap[i][e[0]], remap[i][e[1]], remap[i][e[2]]});
        for (int d : part.dofs) mesh.dofs.push_back(remap[i][d]);
        for (const auto& [key, node] : part.edge_midpoint) {
            const int a = remap[i][static_cast<int>(key >> 32)];
            const int b = remap[i][static_cast<int>(key & 0xffffffffu)];
            mesh.edge_midpoint.emplace(edge_key(a, b), remap[i][node]);
        }
        for (const auto& be : part.boundary_edges) {
            const int tag = tag_of(i, be.tag);
            if (tag < 0) continue;
            mesh.boundary_edges.push_back(
                {remap[i][be.a], remap[i][be.b], be.midpoint >= 0 ? remap[i][be.midpoint] : -1, tag});
        }
    }
    mesh.node_tags.assign(mesh.nodes.size(), 0);
    for (const auto& be : mesh.boundary_edges) {
        for (int node : {be.a, be.b, be.midpoint}) {
            if (node >= 0) mesh.node_tags[node] |= 1u << be.tag;
        }
    }
    return mesh;
}

}  // namespace

Mesh refine_split(const Triangle& t, int level, int order) {
    int v = 0;
    for (int k = 1; k < 3; ++k) {
        if (t.angle(static_cast<VertexId>(k)) > t.angle(static_cast<VertexId>(v))) v = k;
    }
    const int j = (v + 1) % 3, k = (v + 2) % 3;
    const Point2 zv = t.vertex(v), zj = t.vertex(j), zk = t.vertex(k);
    const Point2 d = zk - zj;
    const double s = dot(zv - zj, d) / dot(d, d);
    const Point2 q = zj + s * d;
    // parts (zv, zj, q) and (zv, q, zk); part sides 0 and 1 of the first and 1 and 2
    // of the second lie on parent sides v, j, j, k
    std::vector<Mesh> parts{refine(Triangle(zv, zj, q), level, order), refine(Triangle(zv, q, zk), level, order)};
    const std::array<std::array<int, 3>, 2> tags{{{v, j, -1}, {-1, j, k}}};
    Mesh mesh = glue(parts, level, order, [&](std::size_t part, int tag) { return tags[part][tag]; });
    mesh.domain = t;
    mesh.subdivisions = parts[0].subdivisions;
    return mesh;
}

Mesh sector_fan(double alpha, double radius, int segments, int level, int order) {
    if (!(alpha > 0.0 && alpha < 2.0 * std::numbers::pi) || !(radius > 0.0) || segments < 1 ||
        !(alpha / segments < std::numbers::pi)) {
        throw Error(ErrorCode::invalid_argument, "sector needs 0 < alpha < 2 pi, radius > 0 and segments opening below pi");
    }
    std::vector<Point2> rim(segments + 1);
    for (int i = 0; i <= segments; ++i) {
        const double phi = alpha * i / segments;
        rim[i] = {radius * std::cos(phi), radius * std::sin(phi)};
    }
    std::vector<Mesh> parts;
    for (int i = 0; i < segments; ++i) parts.push_back(refine(Triangle({0.0, 0.0}, rim[i], rim[i + 1]), level, order));
    const std::size_t last = parts.size() - 1;
    return glue(parts, level, order, [&](std::size_t i, int tag) {
        if (tag == index(SideId::z2z3)) return 1;
        if (tag == index(SideId::z1z2) && i == 0) return 0;
        if (tag == index(SideId::z3z1) && i == last) return 2;
        return -1;
    });
}

std::optional<Location> locate(const Mesh& mesh, Point2 p) {
    constexpr double slab = 1e-14;
    if (mesh.domain && !mesh.up_element.empty()) {
        const auto l = mesh.domain->barycentric(p);
        if (std::min({l[0], l[1], l[2]}) < -slab) return std::nullopt;
        const int n = mesh.subdivisions;
        const Lattice vertices{n};
        const int a0 = std::clamp(static_cast<int>(std::floor(l[1] * n)), 0, n - 1);
        const int b0 = std::clamp(static_cast<int>(std::floor(l[2] * n)), 0, n - 1);
        std::optional<Location> best;
        for (int b = b0 - 1; b <= b0 + 1; ++b) {
            for (int a = a0 - 1; a <= a0 + 1; ++a) {
                if (a < 0 || b < 0 || a + b >= n) continue;
                const int v = vertices(a, b);
                for (int e : {mesh.up_element[v], mesh.down_element[v]}) {
                    if (e < 0 || (best && best->element <= e)) continue;
                    if (auto hit = try_element(mesh, e, p, slab * n)) best = hit;
                }
            }
        }
        if (best) return best;
    }
    for (int e = 0; e < mesh.element_count(); ++e) {
        if (auto hit = try_element(mesh, e, p, slab * std::max(1, mesh.subdivisions))) return hit;
    }
    return std::nullopt;
}

void validate(const Mesh& mesh) {
    const int nn = mesh.node_count();
    auto fail = [](const std::string& what) { throw Error(ErrorCode::internal, "corrupt mesh: " + what); };
    if (mesh.order != 1 && mesh.order != 2) fail("bad element order");
    if (mesh.node_tags.size() != mesh.nodes.size()) fail("node tag table size mismatch");
    if (mesh.dofs.size() != mesh.elements.size() * static_cast<std::size_t>(mesh.dofs_per_element())) {
        fail("element dof table size mismatch");
    }
    for (int d : mesh.dofs) {
        if (d < 0 || d >= nn) fail("element dof index out of range");
    }
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
        const auto& el = mesh.elements[e];
        for (int v : el) {
            if (v < 0 || v >= mesh.vertex_node_count) fail("element vertex index out of range");
        }
        const double twice = cross(mesh.nodes[el[1]] - mesh.nodes[el[0]], mesh.nodes[el[2]] - mesh.nodes[el[0]]);
        if (!(twice > 0.0)) fail("element " + std::to_string(e) + " is not positively oriented");
    }
    for (const auto& be : mesh.boundary_edges) {
        if (be.a < 0 || be.a >= nn || be.b < 0 || be.b >= nn || be.midpoint >= nn) fail("boundary edge index out of range");
        if (be.tag < 0 || be.tag > 7) fail("boundary tag out of range");
    }
}

nlohmann::json mesh_to_json(const Mesh& mesh) {
    nlohmann::json j;
    j["level"] = mesh.level;
    j["order"] = mesh.order;
    j["vertex_node_count"] = mesh.vertex_node_count;
    auto& nodes = j["nodes"] = nlohmann::json::array();
    for (const auto& p : mesh.nodes) nodes.push_back({p.x1, p.x2});
    j["elements"] = mesh.elements;
    if (mesh.order == 2) {
        auto& dofs = j["element_dofs"] = nlohmann::json::array();
        for (int e = 0; e < mesh.element_count(); ++e) {
            const auto d = mesh.element_dofs(e);
            dofs.push_back(std::vector<int>(d.begin(), d.end()));
        }
    }
    auto& edges = j["boundary_edges"] = nlohmann::json::array();
    for (const auto& be : mesh.boundary_edges) {
        nlohmann::json edge{{"nodes", {be.a, be.b}}, {"tag", be.tag}};
        if (be.midpoint >= 0) edge["midpoint"] = be.midpoint;
        edges.push_back(edge);
    }
    if (mesh.domain) {
        auto& dom = j["domain"] = nlohmann::json::array();
        for (const auto& p : mesh.domain->vertices()) dom.push_back({p.x1, p.x2});
    }
    return j;
}

Mesh mesh_from_json(const nlohmann::json& j) {
    Mesh mesh;
    try {
        mesh.level = j.at("level").get<int>();
        mesh.order = j.at("order").get<int>();
        mesh.vertex_node_count = j.at("vertex_node_count").get<int>();
        for (const auto& p : j.at("nodes")) mesh.nodes.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        mesh.elements = j.at("elements").get<std::vector<std::array<int, 3>>>();
        if (mesh.order == 2) {
            for (const auto& d : j.at("element_dofs")) {
                const auto v = d.get<std::array<int, 6>>();
                mesh.dofs.insert(mesh.dofs.end(), v.begin(), v.end());
                mesh.edge_midpoint[edge_key(v[0], v[1])] = v[3];
                mesh.edge_midpoint[edge_key(v[1], v[2])] = v[4];
                mesh.edge_midpoint[edge_key(v[2], v[0])] = v[5];
            }
        } else {
            for (const auto& e : mesh.elements) mesh.dofs.insert(mesh.dofs.end(), e.begin(), e.end());
        }
        mesh.node_tags.assign(mesh.nodes.size(), 0);
        for (const auto& edge : j.at("boundary_edges")) {
            BoundaryEdge be;
            be.a = edge.at("nodes").at(0).get<int>();
            be.b = edge.at("nodes").at(1).get<int>();
            be.tag = edge.at("tag").get<int>();
            be.midpoint = edge.value("midpoint", -1);
            mesh.boundary_edges.push_back(be);
        }
        if (j.contains("domain")) {
            const auto& d = j["domain"];
            mesh.domain = Triangle({d[0][0].get<double>(), d[0][1].get<double>()},
                                   {d[1][0].get<double>(), d[1][1].get<double>()},
                                   {d[2][0].get<double>(), d[2][1].get<double>()});
            mesh.subdivisions = 1 << mesh.level;
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::invalid_argument, std::string("mesh JSON: ") + e.what());
    }
    validate(mesh);
    for (const auto& be : mesh.boundary_edges) {
        for (int node : {be.a, be.b, be.midpoint}) {
            if (node >= 0) mesh.node_tags[node] |= 1u << be.tag;
        }
    }
    return mesh;
}

}  // namespace hotspots
