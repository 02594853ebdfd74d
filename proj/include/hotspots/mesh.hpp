#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "hotspots/geometry.hpp"

namespace hotspots {

constexpr int kMaxLevel = 12;

struct BoundaryEdge {
    int a = -1;  // endpoints, in the direction of the parent side
    int b = -1;
    int midpoint = -1;  // order 2 only
    int tag = 0;        // parent side; SideId index for triangle meshes
};

/// Conforming P1/P2 Lagrange mesh. Vertex nodes come first, then (order 2)
/// one node per edge. Element dofs are the three vertices followed by the
/// midpoints of edges 01, 12, 20.
struct Mesh {
    int level = 0;
    int order = 1;
    std::vector<Point2> nodes;
    int vertex_node_count = 0;
    std::vector<std::array<int, 3>> elements;
    std::vector<int> dofs;  // stride dofs_per_element()
    std::vector<BoundaryEdge> boundary_edges;
    std::vector<std::uint8_t> node_tags;  // bit k: node lies on boundary tag k
    std::unordered_map<std::uint64_t, int> edge_midpoint;

    // Set for meshes of a single triangle; enables O(1) point location.
    std::optional<Triangle> domain;
    int subdivisions = 1;
    std::vector<int> up_element;    // by lower-left vertex node, -1 if absent
    std::vector<int> down_element;

    int node_count() const { return static_cast<int>(nodes.size()); }
    int element_count() const { return static_cast<int>(elements.size()); }
    int dofs_per_element() const { return order == 1 ? 3 : 6; }
    std::span<const int> element_dofs(int e) const {
        const int k = dofs_per_element();
        return {dofs.data() + static_cast<std::size_t>(e) * k, static_cast<std::size_t>(k)};
    }
    // Midpoint node of the edge between two vertex nodes, -1 if none.
    int midpoint_index(int a, int b) const;
    // Longest element edge.
    double h() const;
    bool on_tag(int node, int tag) const { return (node_tags[node] >> tag) & 1u; }
};

std::uint64_t edge_key(int a, int b);

Mesh refine(const Triangle& t, int level, int order);

// Two uniformly refined right triangles cut by the altitude from the largest
// angle, so no element angle exceeds pi/2. Tags follow the parent sides; point
// location falls back to a linear search.
Mesh refine_split(const Triangle& t, int level, int order);

// Fan of `segments` isosceles triangles with apex at the origin filling the
// polygonal sector of opening alpha. Tags: 0 first radial side, 1 outer
// chords, 2 last radial side.
Mesh sector_fan(double alpha, double radius, int segments, int level, int order);

struct Location {
    int element;
    std::array<double, 3> barycentric;
};

// Lowest-numbered element containing p, or nullopt when p is outside.
std::optional<Location> locate(const Mesh& mesh, Point2 p);

// Structural sanity check; throws Error(internal) describing the defect.
void validate(const Mesh& mesh);

nlohmann::json mesh_to_json(const Mesh& mesh);
Mesh mesh_from_json(const nlohmann::json& j);

}  // namespace hotspots
