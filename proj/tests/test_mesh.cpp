#include <cmath>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "hotspots/error.hpp"
#include "hotspots/mesh.hpp"

using namespace hotspots;

namespace {

double element_area(const Mesh& m, int e) {
    const auto& el = m.elements[e];
    return 0.5 * cross(m.nodes[el[1]] - m.nodes[el[0]], m.nodes[el[2]] - m.nodes[el[0]]);
}

const Triangle kScalene({0, 0}, {1, 0}, {0.3, 0.9});

}  // namespace

TEST(Refine, Counts) {
    const Mesh m0 = refine(kScalene, 0, 1);
    EXPECT_EQ(m0.element_count(), 1);
    EXPECT_EQ(m0.node_count(), 3);
    EXPECT_EQ(m0.boundary_edges.size(), 3u);

    const Mesh m2 = refine(kScalene, 2, 1);
    EXPECT_EQ(m2.element_count(), 16);
    EXPECT_EQ(m2.node_count(), 15);
    EXPECT_EQ(m2.boundary_edges.size(), 12u);

    const Mesh q1 = refine(kScalene, 1, 2);
    EXPECT_EQ(q1.element_count(), 4);
    EXPECT_EQ(q1.vertex_node_count, 6);
    EXPECT_EQ(q1.node_count(), 15);

    for (int level = 0; level <= 5; ++level) {
        const int n = 1 << level;
        const Mesh m = refine(kScalene, level, 2);
        EXPECT_EQ(m.element_count(), n * n);
        EXPECT_EQ(m.vertex_node_count, (n + 1) * (n + 2) / 2);
        EXPECT_EQ(m.node_count(), (2 * n + 1) * (2 * n + 2) / 2);
        EXPECT_EQ(static_cast<int>(m.boundary_edges.size()), 3 * n);
        EXPECT_EQ(static_cast<int>(m.edge_midpoint.size()), m.node_count() - m.vertex_node_count);
    }
}

TEST(Refine, Guards) {
    EXPECT_THROW(refine(kScalene, 13, 1), Error);
    EXPECT_THROW(refine(kScalene, -1, 1), Error);
    EXPECT_THROW(refine(kScalene, 2, 3), Error);
}

TEST(Refine, AreasOrientationCongruence) {
    for (int level = 0; level <= 6; ++level) {
        const Mesh m = refine(kScalene, level, 1);
        double total = 0.0;
        const double first = element_area(m, 0);
        for (int e = 0; e < m.element_count(); ++e) {
            const double a = element_area(m, e);
            EXPECT_GT(a, 0.0);
            EXPECT_NEAR(a, first, 1e-12 * first);
            total += a;
        }
        EXPECT_NEAR(total, kScalene.area(), 1e-13 * kScalene.area());
        EXPECT_NO_THROW(validate(m));
    }
}

TEST(Refine, Nested) {
    for (int order : {1, 2}) {
        for (int level = 0; level < 5; ++level) {
            const Mesh coarse = refine(kScalene, level, order);
            const Mesh fine = refine(kScalene, level + 1, order);
            std::set<std::pair<double, double>> fine_nodes;
            for (const auto& p : fine.nodes) fine_nodes.insert({p.x1, p.x2});
            for (const auto& p : coarse.nodes) EXPECT_TRUE(fine_nodes.count({p.x1, p.x2})) << level;
        }
    }
    // P2 nodes of level k are exactly the P1 vertex nodes of level k+1
    const Mesh p2 = refine(kScalene, 3, 2);
    const Mesh p1 = refine(kScalene, 4, 1);
    std::set<std::pair<double, double>> a, b;
    for (const auto& p : p2.nodes) a.insert({p.x1, p.x2});
    for (const auto& p : p1.nodes) b.insert({p.x1, p.x2});
    EXPECT_EQ(a, b);
}

TEST(Refine, ConformingEdges) {
    const Mesh m = refine(kScalene, 3, 2);
    std::map<std::uint64_t, int> uses;
    for (int e = 0; e < m.element_count(); ++e) {
        const auto d = m.element_dofs(e);
        for (int k = 0; k < 3; ++k) {
            const int a = d[k], b = d[(k + 1) % 3];
            ++uses[edge_key(a, b)];
            EXPECT_EQ(m.midpoint_index(a, b), d[3 + k]);
            const Point2 mid = 0.5 * (m.nodes[a] + m.nodes[b]);
            EXPECT_NEAR(distance(mid, m.nodes[d[3 + k]]), 0.0, 1e-15);
        }
    }
    int boundary = 0;
    for (const auto& [key, count] : uses) {
        EXPECT_LE(count, 2);
        boundary += count == 1;
    }
    EXPECT_EQ(boundary, static_cast<int>(m.boundary_edges.size()));
}

TEST(Refine, BoundaryTagsPartitionSides) {
    const Mesh m = refine(kScalene, 3, 2);
    for (auto side : {SideId::z1z2, SideId::z2z3, SideId::z3z1}) {
        const auto [p, q] = kScalene.endpoints(side);
        double length = 0.0;
        Point2 cursor = p;
        for (const auto& be : m.boundary_edges) {
            if (be.tag != index(side)) continue;
            EXPECT_EQ(m.nodes[be.a], cursor);
            cursor = m.nodes[be.b];
            length += distance(m.nodes[be.a], m.nodes[be.b]);
            EXPECT_TRUE(m.on_tag(be.a, index(side)));
            EXPECT_TRUE(m.on_tag(be.midpoint, index(side)));
        }
        EXPECT_EQ(cursor, q);
        EXPECT_NEAR(length, kScalene.side_length(side), 1e-14);
    }
    int on_boundary = 0;
    for (int i = 0; i < m.node_count(); ++i) on_boundary += m.node_tags[i] != 0;
    EXPECT_EQ(on_boundary, 3 * 2 * 8);
}

TEST(Locate, Examples) {
    const Triangle unit({0, 0}, {1, 0}, {0.2, 1.1});
    const Mesh m = refine(unit, 4, 1);
    const auto c = locate(m, unit.centroid());
    ASSERT_TRUE(c.has_value());
    EXPECT_NEAR(c->barycentric[0] + c->barycentric[1] + c->barycentric[2], 1.0, 1e-15);

    const auto corner = locate(m, {0, 0});
    ASSERT_TRUE(corner.has_value());
    EXPECT_EQ(corner->element, 0);
    EXPECT_NEAR(corner->barycentric[0], 1.0, 1e-15);

    EXPECT_FALSE(locate(m, {2, 2}).has_value());
}

TEST(Locate, AgreesWithBruteForceOwnership) {
    const Mesh m = refine(kScalene, 3, 2);
    for (int i = 0; i < m.node_count(); ++i) {
        const auto loc = locate(m, m.nodes[i]);
        ASSERT_TRUE(loc.has_value());
        // lowest element id touching the node
        int owner = -1;
        for (int e = 0; e < m.element_count() && owner < 0; ++e) {
            for (int d : m.element_dofs(e)) {
                if (d == i) owner = e;
            }
        }
        EXPECT_EQ(loc->element, owner) << i;
    }
}

TEST(MeshJson, RoundTrip) {
    const Mesh m = refine(kScalene, 2, 2);
    const Mesh r = mesh_from_json(mesh_to_json(m));
    EXPECT_EQ(r.nodes, m.nodes);
    EXPECT_EQ(r.dofs, m.dofs);
    EXPECT_EQ(r.node_tags, m.node_tags);
    EXPECT_EQ(r.edge_midpoint.size(), m.edge_midpoint.size());
    EXPECT_TRUE(locate(r, kScalene.centroid()).has_value());
}

TEST(Validate, DetectsCorruption) {
    Mesh m = refine(kScalene, 2, 1);
    std::swap(m.elements[3][0], m.elements[3][1]);
    EXPECT_THROW(validate(m), Error);
}

TEST(SectorFan, MergesSharedRadii) {
    const double alpha = std::numbers::pi / 2;
    const Mesh m = sector_fan(alpha, 1.0, 8, 2, 2);
    EXPECT_NO_THROW(validate(m));
    EXPECT_EQ(m.element_count(), 8 * 16);
    // 8 fans of 15 vertex nodes, sharing 7 radii of 5 nodes minus the apex counted per fan
    EXPECT_EQ(m.vertex_node_count, 8 * 15 - 7 * 5);
    int first = 0, arc = 0, last = 0;
    for (const auto& be : m.boundary_edges) {
        first += be.tag == 0;
        arc += be.tag == 1;
        last += be.tag == 2;
    }
    EXPECT_EQ(first, 4);
    EXPECT_EQ(arc, 32);
    EXPECT_EQ(last, 4);
    double area = 0.0;
    for (int e = 0; e < m.element_count(); ++e) area += element_area(m, e);
    EXPECT_NEAR(area, 8 * 0.5 * std::sin(alpha / 8), 1e-14);
}

TEST(RefineSplit, RightPartsAndParentTags) {
    const Triangle sliver({0, 0}, {1, 0}, {0.45, 0.02});
    const Mesh m = refine_split(sliver, 3, 2);
    EXPECT_NO_THROW(validate(m));
    EXPECT_EQ(m.element_count(), 2 * 64);
    // the seam from the obtuse vertex to the altitude foot is shared
    EXPECT_EQ(m.vertex_node_count, 2 * 45 - 9);
    double area = 0.0, worst = 0.0;
    for (int e = 0; e < m.element_count(); ++e) {
        area += element_area(m, e);
        const auto& el = m.elements[e];
        const Triangle t(m.nodes[el[0]], m.nodes[el[1]], m.nodes[el[2]]);
        for (auto v : {VertexId::z1, VertexId::z2, VertexId::z3}) worst = std::max(worst, t.angle(v));
    }
    EXPECT_NEAR(area, sliver.area(), 1e-15);
    EXPECT_LE(worst, std::numbers::pi / 2 + 1e-9);
    for (auto side : {SideId::z1z2, SideId::z2z3, SideId::z3z1}) {
        const auto [p, q] = sliver.endpoints(side);
        double length = 0.0;
        Point2 cursor = p;
        for (const auto& be : m.boundary_edges) {
            if (be.tag != index(side)) continue;
            EXPECT_EQ(m.nodes[be.a], cursor);
            cursor = m.nodes[be.b];
            length += distance(m.nodes[be.a], m.nodes[be.b]);
            EXPECT_TRUE(m.on_tag(be.midpoint, index(side)));
        }
        EXPECT_EQ(cursor, q);
        EXPECT_NEAR(length, sliver.side_length(side), 1e-14);
    }
    ASSERT_TRUE(m.domain.has_value());
    const auto loc = locate(m, {0.45, 0.01});
    ASSERT_TRUE(loc.has_value());
}
