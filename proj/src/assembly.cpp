#include "hotspots/assembly.hpp"

#include <cstdio>
#include <ostream>

#include "hotspots/error.hpp"
#include "hotspots/fe.hpp"

namespace hotspots {

BoundarySpec BoundarySpec::all_dirichlet() {
    BoundarySpec bc;
    bc.side.fill(BoundaryCondition::dirichlet);
    return bc;
}

BoundarySpec BoundarySpec::dirichlet_on(std::initializer_list<SideId> sides) {
    BoundarySpec bc;
    for (SideId s : sides) bc.side[index(s)] = BoundaryCondition::dirichlet;
    return bc;
}

BoundarySpec BoundarySpec::from_ranks(const Triangle& t, std::string_view ranks) {
    const SideLabeling labels = label_sides(t);
    BoundarySpec bc;
    for (char c : ranks) {
        SideId s;
        switch (c) {
            case 'S': s = labels.shortest; break;
            case 'M': s = labels.medium; break;
            case 'L': s = labels.longest; break;
            default:
                throw Error(ErrorCode::invalid_argument, std::string("unknown side rank '") + c + "'");
        }
        bc.side[index(s)] = BoundaryCondition::dirichlet;
    }
    return bc;
}

bool BoundarySpec::any_dirichlet() const { return dirichlet_mask() != 0; }

std::uint8_t BoundarySpec::dirichlet_mask() const {
    std::uint8_t mask = 0;
    for (int k = 0; k < 3; ++k) {
        if (dirichlet(k)) mask |= 1u << k;
    }
    return mask;
}

std::string BoundarySpec::code() const {
    std::string out;
    for (int k = 0; k < 3; ++k) out += dirichlet(k) ? 'D' : 'N';
    return out;
}

Assembled assemble(const Mesh& mesh) {
    validate(mesh);
    const int order = mesh.order;
    const int nd = mesh.dofs_per_element();
    // stiffness integrand has degree 2(order-1), mass 2 order
    const auto stiff_rule = order == 1 ? quadrature(1) : quadrature_interior2();
    const auto mass_rule = quadrature(2 * order);

    std::vector<Eigen::Triplet<double>> kt, mt;
    kt.reserve(static_cast<std::size_t>(mesh.element_count()) * nd * nd);
    mt.reserve(kt.capacity());
    double phi[6];
    Point2 grad[6];
    for (int e = 0; e < mesh.element_count(); ++e) {
        const ElementGeometry g = element_geometry(mesh, e);
        double ke[6][6] = {};
        double me[6][6] = {};
        for (const auto& q : stiff_rule) {
            shape_gradients(order, q.bary, g, grad);
            const double w = q.weight * g.area;
            for (int i = 0; i < nd; ++i) {
                for (int j = 0; j < nd; ++j) ke[i][j] += w * dot(grad[i], grad[j]);
            }
        }
        for (const auto& q : mass_rule) {
            shape_values(order, q.bary, phi);
            const double w = q.weight * g.area;
            for (int i = 0; i < nd; ++i) {
                for (int j = 0; j < nd; ++j) me[i][j] += w * phi[i] * phi[j];
            }
        }
        const auto dofs = mesh.element_dofs(e);
        for (int i = 0; i < nd; ++i) {
            for (int j = 0; j < nd; ++j) {
                kt.emplace_back(dofs[i], dofs[j], ke[i][j]);
                mt.emplace_back(dofs[i], dofs[j], me[i][j]);
            }
        }
    }
    Assembled out;
    const int n = mesh.node_count();
    out.K.resize(n, n);
    out.M.resize(n, n);
    out.K.setFromTriplets(kt.begin(), kt.end());
    out.M.setFromTriplets(mt.begin(), mt.end());
    return out;
}

namespace {

SparseMatrix select(const SparseMatrix& a, const DofMap& dofs) {
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(a.nonZeros());
    for (int col = 0; col < a.outerSize(); ++col) {
        const int c = dofs.full_to_reduced[col];
        if (c < 0) continue;
        for (SparseMatrix::InnerIterator it(a, col); it; ++it) {
            const int r = dofs.full_to_reduced[it.row()];
            if (r >= 0) t.emplace_back(r, c, it.value());
        }
    }
    SparseMatrix out(dofs.size(), dofs.size());
    out.setFromTriplets(t.begin(), t.end());
    return out;
}

}  // namespace

ReducedSystem reduce(const Assembled& a, const Mesh& mesh, const BoundarySpec& bc) {
    ReducedSystem out;
    const std::uint8_t mask = bc.dirichlet_mask();
    out.dofs.full_to_reduced.assign(mesh.node_count(), -1);
    for (int i = 0; i < mesh.node_count(); ++i) {
        if (mesh.node_tags[i] & mask) continue;
        out.dofs.full_to_reduced[i] = out.dofs.size();
        out.dofs.kept.push_back(i);
    }
    if (out.dofs.size() == 0) {
        throw Error(ErrorCode::empty_system, "no free degrees of freedom left after Dirichlet reduction (" +
                                                 bc.code() + ", level " + std::to_string(mesh.level) + ")");
    }
    if (mask == 0) {
        out.K = a.K;
        out.M = a.M;
        return out;
    }
    out.K = select(a.K, out.dofs);
    out.M = select(a.M, out.dofs);
    return out;
}

Eigen::VectorXd expand(const DofMap& dofs, const Eigen::VectorXd& reduced) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dofs.full_to_reduced.size()));
    for (int r = 0; r < dofs.size(); ++r) out[dofs.kept[r]] = reduced[r];
    return out;
}

Eigen::VectorXd restrict_to(const DofMap& dofs, const Eigen::VectorXd& full) {
    Eigen::VectorXd out(dofs.size());
    for (int r = 0; r < dofs.size(); ++r) out[r] = full[dofs.kept[r]];
    return out;
}

void write_coordinate(std::ostream& out, const SparseMatrix& m) {
    char buf[96];
    for (int col = 0; col < m.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
            std::snprintf(buf, sizeof buf, "%d %d %.17g\n", static_cast<int>(it.row()), col, it.value());
            out << buf;
        }
    }
}

}  // namespace hotspots
