#pragma once

#include <array>
#include <span>

#include <Eigen/Core>

#include "hotspots/mesh.hpp"

namespace hotspots {

using Bary = std::array<double, 3>;

struct QuadraturePoint {
    Bary bary;
    double weight;  // weights of a rule sum to 1; multiply by the element area
};

// Exact rules on triangles: degree 1 (centroid), 2 (edge midpoints), 4 (6-point Dunavant).
std::span<const QuadraturePoint> quadrature(int degree);
// Degree 2 rule with interior points (2/3, 1/6, 1/6).
std::span<const QuadraturePoint> quadrature_interior2();

struct ElementGeometry {
    std::array<Point2, 3> v;
    double area;
    std::array<Point2, 3> grad_bary;  // constant gradients of the barycentric coordinates

    Point2 point(const Bary& l) const { return l[0] * v[0] + l[1] * v[1] + l[2] * v[2]; }
};

ElementGeometry element_geometry(const Mesh& mesh, int e);

// Lagrange basis on an element: P1 -> L_i; P2 -> L_i(2L_i - 1), then 4L_0L_1, 4L_1L_2, 4L_2L_0.
void shape_values(int order, const Bary& l, double* out);
void shape_gradients(int order, const Bary& l, const ElementGeometry& g, Point2* out);

double evaluate(const Mesh& mesh, const Eigen::VectorXd& u, int e, const Bary& l);
Point2 gradient(const Mesh& mesh, const Eigen::VectorXd& u, int e, const Bary& l);

struct Hessian2 {
    double xx = 0.0, xy = 0.0, yy = 0.0;
};

// Constant per element for P2, zero for P1.
Hessian2 hessian(const Mesh& mesh, const Eigen::VectorXd& u, int e);

// Values of f at every mesh node (Lagrange interpolation).
template <class F>
Eigen::VectorXd interpolate(const Mesh& mesh, F&& f) {
    Eigen::VectorXd out(mesh.node_count());
    for (int i = 0; i < mesh.node_count(); ++i) out[i] = f(mesh.nodes[i]);
    return out;
}

}  // namespace hotspots
