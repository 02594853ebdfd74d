#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "hotspots/mesh.hpp"

namespace hotspots {

using SparseMatrix = Eigen::SparseMatrix<double>;

enum class BoundaryCondition { dirichlet, neumann };

/// Boundary condition per boundary tag (SideId index for triangle meshes).
struct BoundarySpec {
    std::array<BoundaryCondition, 3> side{BoundaryCondition::neumann, BoundaryCondition::neumann,
                                          BoundaryCondition::neumann};

    static BoundarySpec all_neumann() { return {}; }
    static BoundarySpec all_dirichlet();
    static BoundarySpec dirichlet_on(std::initializer_list<SideId> sides);
    // Dirichlet sides named by length rank, e.g. "S", "LM", "LMS"; "" is all Neumann.
    static BoundarySpec from_ranks(const Triangle& t, std::string_view ranks);

    bool dirichlet(int tag) const { return side[tag] == BoundaryCondition::dirichlet; }
    bool any_dirichlet() const;
    std::uint8_t dirichlet_mask() const;
    // "D" on Dirichlet sides and "N" on Neumann sides, in tag order
    std::string code() const;
};

struct Assembled {
    SparseMatrix K;  // stiffness
    SparseMatrix M;  // mass
};

Assembled assemble(const Mesh& mesh);

struct DofMap {
    std::vector<int> kept;             // reduced index -> node
    std::vector<int> full_to_reduced;  // node -> reduced index, -1 when constrained
    int size() const { return static_cast<int>(kept.size()); }
};

struct ReducedSystem {
    SparseMatrix K;
    SparseMatrix M;
    DofMap dofs;
};

ReducedSystem reduce(const Assembled& a, const Mesh& mesh, const BoundarySpec& bc);

// Zero-extends a reduced vector to all mesh nodes.
Eigen::VectorXd expand(const DofMap& dofs, const Eigen::VectorXd& reduced);
Eigen::VectorXd restrict_to(const DofMap& dofs, const Eigen::VectorXd& full);

// One "row col value" line per stored entry, 17 significant digits.
void write_coordinate(std::ostream& out, const SparseMatrix& m);

}  // namespace hotspots
