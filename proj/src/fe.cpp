#include "hotspots/fe.hpp"

#include "hotspots/error.hpp"

namespace hotspots {

namespace {

constexpr double kThird = 1.0 / 3.0;

constexpr QuadraturePoint kCentroid[] = {{{kThird, kThird, kThird}, 1.0}};

constexpr QuadraturePoint kMidpoints[] = {
    {{0.5, 0.5, 0.0}, kThird},
    {{0.0, 0.5, 0.5}, kThird},
    {{0.5, 0.0, 0.5}, kThird},
};

constexpr QuadraturePoint kInterior2[] = {
    {{2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0}, kThird},
    {{1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0}, kThird},
    {{1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0}, kThird},
};

// Dunavant degree 4
constexpr double kA1 = 0.445948490915964886;
constexpr double kB1 = 1.0 - 2.0 * kA1;
constexpr double kW1 = 0.223381589678011466;
constexpr double kA2 = 0.091576213509770743;
constexpr double kB2 = 1.0 - 2.0 * kA2;
constexpr double kW2 = 0.109951743655321868;

constexpr QuadraturePoint kDunavant4[] = {
    {{kB1, kA1, kA1}, kW1}, {{kA1, kB1, kA1}, kW1}, {{kA1, kA1, kB1}, kW1},
    {{kB2, kA2, kA2}, kW2}, {{kA2, kB2, kA2}, kW2}, {{kA2, kA2, kB2}, kW2},
};

}  // namespace

std::span<const QuadraturePoint> quadrature(int degree) {
    if (degree <= 1) return kCentroid;
    if (degree == 2) return kMidpoints;
    if (degree <= 4) return kDunavant4;
    throw Error(ErrorCode::invalid_argument, "no quadrature rule of degree " + std::to_string(degree));
}

std::span<const QuadraturePoint> quadrature_interior2() { return kInterior2; }

ElementGeometry element_geometry(const Mesh& mesh, int e) {
    const auto& el = mesh.elements[e];
    ElementGeometry g;
    for (int k = 0; k < 3; ++k) g.v[k] = mesh.nodes[el[k]];
    const double twice = cross(g.v[1] - g.v[0], g.v[2] - g.v[0]);
    g.area = 0.5 * twice;
    for (int k = 0; k < 3; ++k) {
        const Point2 opposite = g.v[(k + 2) % 3] - g.v[(k + 1) % 3];
        g.grad_bary[k] = (1.0 / twice) * Point2{-opposite.x2, opposite.x1};
    }
    return g;
}

void shape_values(int order, const Bary& l, double* out) {
    if (order == 1) {
        out[0] = l[0];
        out[1] = l[1];
        out[2] = l[2];
        return;
    }
    for (int k = 0; k < 3; ++k) out[k] = l[k] * (2.0 * l[k] - 1.0);
    out[3] = 4.0 * l[0] * l[1];
    out[4] = 4.0 * l[1] * l[2];
    out[5] = 4.0 * l[2] * l[0];
}

void shape_gradients(int order, const Bary& l, const ElementGeometry& g, Point2* out) {
    const auto& d = g.grad_bary;
    if (order == 1) {
        out[0] = d[0];
        out[1] = d[1];
        out[2] = d[2];
        return;
    }
    for (int k = 0; k < 3; ++k) out[k] = (4.0 * l[k] - 1.0) * d[k];
    out[3] = 4.0 * (l[1] * d[0] + l[0] * d[1]);
    out[4] = 4.0 * (l[2] * d[1] + l[1] * d[2]);
    out[5] = 4.0 * (l[0] * d[2] + l[2] * d[0]);
}

double evaluate(const Mesh& mesh, const Eigen::VectorXd& u, int e, const Bary& l) {
    double phi[6];
    shape_values(mesh.order, l, phi);
    const auto dofs = mesh.element_dofs(e);
    double out = 0.0;
    for (std::size_t k = 0; k < dofs.size(); ++k) out += u[dofs[k]] * phi[k];
    return out;
}

Point2 gradient(const Mesh& mesh, const Eigen::VectorXd& u, int e, const Bary& l) {
    const ElementGeometry g = element_geometry(mesh, e);
    Point2 grad[6];
    shape_gradients(mesh.order, l, g, grad);
    const auto dofs = mesh.element_dofs(e);
    Point2 out;
    for (std::size_t k = 0; k < dofs.size(); ++k) out = out + u[dofs[k]] * grad[k];
    return out;
}

Hessian2 hessian(const Mesh& mesh, const Eigen::VectorXd& u, int e) {
    Hessian2 h;
    if (mesh.order == 1) return h;
    const ElementGeometry g = element_geometry(mesh, e);
    const auto dofs = mesh.element_dofs(e);
    const auto& d = g.grad_bary;
    // d2(2L^2 - L) = 4 dL dL^T;  d2(4 LiLj) = 4 (dLi dLj^T + dLj dLi^T)
    auto add_outer = [&](double c, Point2 a, Point2 b) {
        h.xx += c * a.x1 * b.x1;
        h.xy += c * 0.5 * (a.x1 * b.x2 + a.x2 * b.x1);
        h.yy += c * a.x2 * b.x2;
    };
    for (int k = 0; k < 3; ++k) add_outer(4.0 * u[dofs[k]], d[k], d[k]);
    const int pairs[3][2] = {{0, 1}, {1, 2}, {2, 0}};
    for (int k = 0; k < 3; ++k) add_outer(8.0 * u[dofs[3 + k]], d[pairs[k][0]], d[pairs[k][1]]);
    return h;
}

}  // namespace hotspots
