#include "hotspots/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "hotspots/error.hpp"
#include "hotspots/fe.hpp"

namespace hotspots {

namespace {

using Factor = Eigen::SimplicialLDLT<SparseMatrix>;

void fill_random(Eigen::Ref<Eigen::VectorXd> v, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = u(rng);
}

// Modified Gram-Schmidt in the M inner product, two passes, against `c` and
// earlier columns. Collapsed columns are replaced by random vectors.
void m_orthonormalize(Eigen::MatrixXd& Y, const SparseMatrix& M, const Eigen::VectorXd& c,
                      const Eigen::VectorXd& Mc, std::mt19937_64& rng) {
    Eigen::MatrixXd MY(Y.rows(), Y.cols());
    for (Eigen::Index j = 0; j < Y.cols(); ++j) {
        for (int attempt = 0;; ++attempt) {
            Eigen::VectorXd v = Y.col(j);
            const double before = std::sqrt(std::max(0.0, v.dot(M * v)));
            for (int pass = 0; pass < 2; ++pass) {
                if (c.size()) v -= c * Mc.dot(v);
                for (Eigen::Index i = 0; i < j; ++i) v -= Y.col(i) * MY.col(i).dot(v);
            }
            Eigen::VectorXd Mv = M * v;
            const double nrm = std::sqrt(std::max(0.0, v.dot(Mv)));
            if (nrm > 1e-8 * before && nrm > 0.0) {
                Y.col(j) = v / nrm;
                MY.col(j) = Mv / nrm;
                break;
            }
            if (attempt > 5) throw Error(ErrorCode::not_converged, "could not build an M-orthonormal block");
            fill_random(Y.col(j), rng);
        }
    }
}

double dual_residual(const SparseMatrix& K, const SparseMatrix& M, const Factor& mass, const Eigen::VectorXd& x,
                     double theta) {
    const Eigen::VectorXd r = K * x - theta * (M * x);
    const Eigen::VectorXd z = mass.solve(r);
    return std::sqrt(std::max(0.0, r.dot(z)));
}

}  // namespace

EigenSolution smallest_pairs(const SparseMatrix& K, const SparseMatrix& M, int k, double shift,
                             const SolverOptions& opt, const Eigen::MatrixXd& start, const Eigen::VectorXd& deflate) {
    const int n = static_cast<int>(K.rows());
    const int available = deflate.size() ? n - 1 : n;
    if (k < 1 || k > available) {
        throw Error(ErrorCode::invalid_argument, "requested " + std::to_string(k) + " eigenpairs from a system of size " +
                                                     std::to_string(n));
    }
    const int p = std::min(available, k + std::max(opt.guard_vectors, k));

    Factor op;
    double sigma = shift;
    for (int attempt = 0;; ++attempt) {
        const SparseMatrix A = K - sigma * M;
        op.compute(A);
        if (op.info() == Eigen::Success) break;
        if (attempt == 3) throw Error(ErrorCode::factorization_failed, "shifted operator factorization failed");
        sigma -= 1e-3 * (std::abs(sigma) + 1.0);
    }
    Factor mass(M);
    if (mass.info() != Eigen::Success) throw Error(ErrorCode::factorization_failed, "mass matrix factorization failed");

    std::mt19937_64 rng(opt.seed);
    Eigen::VectorXd c, Mc;
    if (deflate.size()) {
        c = deflate / std::sqrt(deflate.dot(M * deflate));
        Mc = M * c;
    }
    Eigen::MatrixXd X(n, p);
    for (int j = 0; j < p; ++j) {
        if (j < start.cols() && start.rows() == n) {
            X.col(j) = start.col(j);
        } else {
            fill_random(X.col(j), rng);
        }
    }
    m_orthonormalize(X, M, c, Mc, rng);

    EigenSolution out;
    out.shift = sigma;
    double best = std::numeric_limits<double>::infinity();
    int settled = 0;  // iterations since the worst residual last halved
    for (int it = 1; it <= opt.max_iterations; ++it) {
        Eigen::MatrixXd Y = op.solve(M * X);
        m_orthonormalize(Y, M, c, Mc, rng);
        Eigen::MatrixXd H = Y.transpose() * (K * Y);
        H = 0.5 * (H + H.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(H);
        X = Y * eig.eigenvectors();
        const Eigen::VectorXd theta = eig.eigenvalues();

        bool done = true, near = true;
        std::vector<double> res(k);
        for (int j = 0; j < k; ++j) {
            res[j] = dual_residual(K, M, mass, X.col(j), theta[j]);
            const double scale = opt.tol * std::max(std::abs(theta[j]), 1.0);
            if (res[j] > scale) done = false;
            if (res[j] > 1e3 * scale) near = false;
        }
        const double worst = *std::max_element(res.begin(), res.end());
        if (worst < 0.5 * best) {
            best = worst;
            settled = 0;
        } else {
            ++settled;
        }
        if (!done && near && settled >= 5) {
            done = true;
            out.stagnated = true;
        }
        if (done) {
            out.iterations = it;
            out.eigenvalues.assign(theta.data(), theta.data() + k);
            out.vectors = X.leftCols(k);
            out.residual_norms = res;
            return out;
        }
    }
    throw Error(ErrorCode::not_converged,
                "eigensolver did not converge in " + std::to_string(opt.max_iterations) + " iterations");
}

Eigen::VectorXd prolongate(const Mesh& coarse, const Eigen::VectorXd& u, const Mesh& fine) {
    Eigen::VectorXd out(fine.node_count());
    for (int i = 0; i < fine.node_count(); ++i) {
        const auto loc = locate(coarse, fine.nodes[i]);
        if (!loc) throw Error(ErrorCode::internal, "prolongation target node outside the coarse mesh");
        out[i] = evaluate(coarse, u, loc->element, loc->barycentric);
    }
    return out;
}

NeumannResult neumann_mu2(const Mesh& mesh, const SolverOptions& opt, const NeumannResult* coarse) {
    const Assembled a = assemble(mesh);
    Eigen::MatrixXd start;
    if (coarse && !coarse->mesh.up_element.empty()) {
        start.resize(mesh.node_count(), 2);
        start.col(0) = prolongate(coarse->mesh, coarse->u2, mesh);
        start.col(1) = prolongate(coarse->mesh, coarse->u3, mesh);
    }
    double diam2 = 0.0;
    for (const auto& p : mesh.nodes) {
        diam2 = std::max(diam2, dot(p - mesh.nodes[0], p - mesh.nodes[0]));
    }
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(mesh.node_count());
    const EigenSolution s = smallest_pairs(a.K, a.M, 2, -1.0 / diam2, opt, start, ones);
    NeumannResult out;
    out.mesh = mesh;
    out.mu2 = s.eigenvalues[0];
    out.mu3 = s.eigenvalues[1];
    out.gap = out.mu3 - out.mu2;
    out.u2 = s.vectors.col(0);
    out.u3 = s.vectors.col(1);
    out.residuals = {s.residual_norms[0], s.residual_norms[1]};
    out.iterations = s.iterations;
    return out;
}

NeumannResult neumann_mu2(const Triangle& t, int level, int order, const SolverOptions& opt,
                          const NeumannResult* coarse) {
    return neumann_mu2(refine(t, level, order), opt, coarse);
}

MixedResult mixed_lambda1(const Mesh& mesh, const BoundarySpec& bc, const SolverOptions& opt,
                          const MixedResult* coarse) {
    if (!bc.any_dirichlet()) {
        throw Error(ErrorCode::invalid_argument, "mixed problem needs at least one Dirichlet side");
    }
    const Assembled a = assemble(mesh);
    const ReducedSystem sys = reduce(a, mesh, bc);
    Eigen::MatrixXd start;
    // unstructured coarse meshes would need a brute-force point search
    if (coarse && !coarse->mesh.up_element.empty()) {
        start = restrict_to(sys.dofs, prolongate(coarse->mesh, coarse->u, mesh));
    }
    const EigenSolution s = smallest_pairs(sys.K, sys.M, 1, 0.0, opt, start);
    MixedResult out;
    out.mesh = mesh;
    out.bc = bc;
    out.lambda1 = s.eigenvalues[0];
    out.u = expand(sys.dofs, s.vectors.col(0));
    if (out.u.sum() < 0) out.u = -out.u;
    out.residual = s.residual_norms[0];
    const double hi = out.u.maxCoeff();
    out.min_relative = out.u.minCoeff() / hi;
    out.positive = out.min_relative >= -1e-10;
    out.iterations = s.iterations;
    return out;
}

MixedResult mixed_lambda1(const Triangle& t, const BoundarySpec& bc, int level, int order, const SolverOptions& opt,
                          const MixedResult* coarse) {
    return mixed_lambda1(refine(t, level, order), bc, opt, coarse);
}

Mesh estimate_mesh(const Triangle& t, int level, int order) {
    double largest = 0.0;
    for (VertexId v : {VertexId::z1, VertexId::z2, VertexId::z3}) largest = std::max(largest, t.angle(v));
    return largest > kSplitAngle ? refine_split(t, level, order) : refine(t, level, order);
}

EigenEstimate richardson(std::span<const LevelValue> values, double order_goal) {
    if (values.size() < 3) {
        throw Error(ErrorCode::invalid_argument, "Richardson extrapolation needs at least three levels");
    }
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i].level != values[i - 1].level + 1) {
            throw Error(ErrorCode::invalid_argument, "Richardson extrapolation needs consecutive levels");
        }
    }
    EigenEstimate e;
    e.per_level.assign(values.begin(), values.end());
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i].value > values[i - 1].value * (1.0 + 1e-12)) e.increasing_flag = true;
    }
    const std::size_t n = values.size();
    const double l0 = values[n - 3].value;
    const double l1 = values[n - 2].value;
    const double l2 = values[n - 1].value;
    const double d0 = l0 - l1;
    const double d1 = l1 - l2;
    e.extrapolated = l2;
    e.observed_order = std::numeric_limits<double>::quiet_NaN();
    if (d0 == 0.0 && d1 == 0.0) {
        e.order_flag = true;
        e.error_bar = 0.0;
        return e;
    }
    const double ratio = d0 / d1;
    if (!std::isfinite(ratio) || ratio <= 1.0) {
        // non-monotone or non-contracting sequence
        e.reliable = false;
        e.order_flag = true;
        e.error_bar = 3.0 * std::max(std::abs(d0), std::abs(d1));
        return e;
    }
    const double p = std::log2(ratio);
    e.observed_order = p;
    e.order_flag = std::abs(p - order_goal) > 0.5;
    e.extrapolated = l2 - d1 / (ratio - 1.0);
    e.error_bar = 3.0 * std::abs(l2 - e.extrapolated);
    return e;
}

EigenEstimate neumann_estimate(const Triangle& t, int lo, int hi, int order, const SolverOptions& opt,
                               NeumannResult* finest) {
    std::vector<LevelValue> values;
    std::optional<NeumannResult> prev;
    for (int level = lo; level <= hi; ++level) {
        NeumannResult r = neumann_mu2(estimate_mesh(t, level, order), opt, prev ? &*prev : nullptr);
        values.push_back({level, r.mu2});
        prev = std::move(r);
    }
    if (finest && prev) *finest = std::move(*prev);
    return richardson(values, 2.0 * order);
}

EigenEstimate mixed_estimate(const Triangle& t, const BoundarySpec& bc, int lo, int hi, int order,
                             const SolverOptions& opt, MixedResult* finest) {
    std::vector<LevelValue> values;
    std::optional<MixedResult> prev;
    for (int level = lo; level <= hi; ++level) {
        MixedResult r = mixed_lambda1(estimate_mesh(t, level, order), bc, opt, prev ? &*prev : nullptr);
        values.push_back({level, r.lambda1});
        prev = std::move(r);
    }
    if (finest && prev) *finest = std::move(*prev);
    return richardson(values, 2.0 * order);
}

EigenEstimate mixed_estimate(const std::function<Mesh(int)>& make_mesh, const BoundarySpec& bc, int lo, int hi,
                             int order, const SolverOptions& opt) {
    std::vector<LevelValue> values;
    std::optional<MixedResult> prev;
    for (int level = lo; level <= hi; ++level) {
        const Mesh mesh = make_mesh(level);
        if (mesh.order != order) throw Error(ErrorCode::invalid_argument, "mesh family has the wrong element order");
        MixedResult r = mixed_lambda1(mesh, bc, opt, prev ? &*prev : nullptr);
        values.push_back({level, r.lambda1});
        prev = std::move(r);
    }
    return richardson(values, 2.0 * order);
}

bool numerically_multiple(std::span<const double> gaps, std::span<const double> mu2s) {
    for (std::size_t i = 1; i < gaps.size() && i < mu2s.size(); ++i) {
        if (gaps[i] < 1e-3 * mu2s[i] && gaps[i - 1] < 1e-3 * mu2s[i - 1]) return true;
    }
    return false;
}

}  // namespace hotspots
