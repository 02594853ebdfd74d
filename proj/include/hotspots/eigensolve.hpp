#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hotspots/assembly.hpp"
#include "hotspots/mesh.hpp"

namespace hotspots {

struct SolverOptions {
    double tol = 1e-9;  // residual bound relative to max(lambda, 1)
    int max_iterations = 400;
    int guard_vectors = 4;  // extra block columns beyond the requested count
    std::uint64_t seed = 0x5EED;
};

struct EigenSolution {
    std::vector<double> eigenvalues;  // ascending
    Eigen::MatrixXd vectors;          // M-orthonormal columns over the system's dofs
    std::vector<double> residual_norms;  // ||K v - lambda M v||_{M^-1} with ||v||_M = 1
    int iterations = 0;
    double shift = 0.0;
    // residuals stalled at round-off within 1e3 * tol
    bool stagnated = false;
};

/// k smallest eigenpairs of K v = lambda M v above `shift` by shift-invert
/// subspace iteration with Rayleigh-Ritz. Columns of `start` seed the block;
/// `deflate` (if non-empty) is projected out of every iterate.
EigenSolution smallest_pairs(const SparseMatrix& K, const SparseMatrix& M, int k, double shift,
                             const SolverOptions& opt = {}, const Eigen::MatrixXd& start = {},
                             const Eigen::VectorXd& deflate = {});

// Evaluates a full nodal field of `coarse` at the nodes of `fine`; exact for nested meshes.
Eigen::VectorXd prolongate(const Mesh& coarse, const Eigen::VectorXd& u, const Mesh& fine);

struct NeumannResult {
    Mesh mesh;
    double mu2 = 0.0;
    double mu3 = 0.0;
    double gap = 0.0;  // mu3 - mu2
    Eigen::VectorXd u2;  // full nodal vectors, M-normalized
    Eigen::VectorXd u3;
    std::array<double, 2> residuals{};
    int iterations = 0;
};

// Second and third Neumann eigenpairs with the constant mode deflated.
NeumannResult neumann_mu2(const Mesh& mesh, const SolverOptions& opt = {}, const NeumannResult* coarse = nullptr);
NeumannResult neumann_mu2(const Triangle& t, int level, int order, const SolverOptions& opt = {},
                          const NeumannResult* coarse = nullptr);

struct MixedResult {
    Mesh mesh;
    BoundarySpec bc;
    double lambda1 = 0.0;
    Eigen::VectorXd u;  // full nodal vector, zero on Dirichlet nodes, sign-normalized
    double residual = 0.0;
    double min_relative = 0.0;  // min(u) / max(u)
    bool positive = true;       // min_relative >= -1e-10
    int iterations = 0;
};

MixedResult mixed_lambda1(const Mesh& mesh, const BoundarySpec& bc, const SolverOptions& opt = {},
                          const MixedResult* coarse = nullptr);
MixedResult mixed_lambda1(const Triangle& t, const BoundarySpec& bc, int level, int order,
                          const SolverOptions& opt = {}, const MixedResult* coarse = nullptr);

struct LevelValue {
    int level;
    double value;
};

struct EigenEstimate {
    double extrapolated = 0.0;
    double error_bar = 0.0;
    double observed_order = 0.0;  // NaN when undefined
    std::vector<LevelValue> per_level;
    bool reliable = true;     // false for non-monotone sequences
    bool order_flag = false;  // observed order outside goal +- 0.5 or undefined
    bool increasing_flag = false;  // some refinement step increased the value
};

/// Richardson extrapolation from the last three levels assuming
/// lambda_h = lambda + C h^p; error bar is three times the correction.
EigenEstimate richardson(std::span<const LevelValue> values, double order_goal);

// Estimates mesh triangles with a larger angle by refine_split.
inline constexpr double kSplitAngle = 5.0 * 3.14159265358979323846 / 6.0;
Mesh estimate_mesh(const Triangle& t, int level, int order);

// Solves on levels lo..hi (warm-started on lattice meshes) and extrapolates.
EigenEstimate neumann_estimate(const Triangle& t, int lo, int hi, int order, const SolverOptions& opt = {},
                               NeumannResult* finest = nullptr);
EigenEstimate mixed_estimate(const Triangle& t, const BoundarySpec& bc, int lo, int hi, int order,
                             const SolverOptions& opt = {}, MixedResult* finest = nullptr);
// Same for an arbitrary mesh family (e.g. a sector fan); make_mesh(level) builds level meshes.
EigenEstimate mixed_estimate(const std::function<Mesh(int)>& make_mesh, const BoundarySpec& bc, int lo, int hi,
                             int order, const SolverOptions& opt = {});

// gap < 1e-3 * mu2 at two consecutive levels
bool numerically_multiple(std::span<const double> gaps, std::span<const double> mu2s);

}  // namespace hotspots
