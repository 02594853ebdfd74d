#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "hotspots/eigensolve.hpp"
#include "hotspots/error.hpp"
#include "hotspots/fe.hpp"

using namespace hotspots;

namespace {

constexpr double pi = std::numbers::pi;
const Triangle kHalfEquilateral({0, 0}, {1, 0}, {0, std::sqrt(3.0)});
const Triangle kRightIsosceles({0, 0}, {1, 0}, {0, 1});
const Triangle kEquilateral({0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2});
const Triangle kScalene({0, 0}, {1, 0}, {0.3, 0.9});

}  // namespace

TEST(SmallestPairs, MatchesDenseSolver) {
    const Mesh m = refine(kScalene, 2, 2);
    const auto a = assemble(m);
    const auto r = reduce(a, m, BoundarySpec::dirichlet_on({SideId::z1z2}));
    const auto s = smallest_pairs(r.K, r.M, 3, 0.0);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> dense{Eigen::MatrixXd(r.K), Eigen::MatrixXd(r.M)};
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(s.eigenvalues[j], dense.eigenvalues()[j], 1e-10 * dense.eigenvalues()[j]);
    const Eigen::MatrixXd gram = s.vectors.transpose() * (r.M * s.vectors);
    EXPECT_LT((gram - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-10);
    for (double res : s.residual_norms) EXPECT_LT(res, 1e-9 * 100);
}

TEST(SmallestPairs, NeumannConstantMode) {
    const Mesh m = refine(kScalene, 3, 1);
    const auto a = assemble(m);
    const auto s = smallest_pairs(a.K, a.M, 1, -1.0);
    EXPECT_NEAR(s.eigenvalues[0], 0.0, 1e-9);
    const Eigen::VectorXd v = s.vectors.col(0);
    EXPECT_NEAR(std::abs(v.dot(a.M * Eigen::VectorXd::Ones(m.node_count()))), std::sqrt(kScalene.area()), 1e-9);
    EXPECT_LT((v.array() - v.mean()).abs().maxCoeff(), 1e-9);
}

TEST(SmallestPairs, RejectsBadCount) {
    const Mesh m = refine(kScalene, 1, 1);
    const auto a = assemble(m);
    EXPECT_THROW(smallest_pairs(a.K, a.M, 0, -1.0), Error);
    EXPECT_THROW(smallest_pairs(a.K, a.M, 7, -1.0), Error);
}

TEST(SmallestPairs, Deterministic) {
    const auto a = neumann_mu2(kScalene, 4, 2);
    const auto b = neumann_mu2(kScalene, 4, 2);
    EXPECT_EQ(a.mu2, b.mu2);
    EXPECT_EQ((a.u2 - b.u2).norm(), 0.0);
}

TEST(NeumannMu2, HalfEquilateral) {
    const auto r = neumann_mu2(kHalfEquilateral, 5, 2);
    EXPECT_NEAR(r.mu2, 4 * pi * pi / 9, 1e-6 * r.mu2);
    EXPECT_GT(r.gap, 1.0);
    EXPECT_LT(r.residuals[0], 1e-9 * r.mu2);
    // deflated: orthogonal to constants
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(r.mesh.node_count());
    EXPECT_NEAR(r.u2.dot(assemble(r.mesh).M * ones), 0.0, 1e-10);
}

TEST(NeumannMu2, RightIsosceles) {
    const auto r = neumann_mu2(kRightIsosceles, 5, 2);
    EXPECT_NEAR(r.mu2, pi * pi, 1e-6 * r.mu2);
}

TEST(NeumannMu2, EquilateralIsDouble) {
    std::vector<double> gaps, mus;
    for (int level = 3; level <= 5; ++level) {
        const auto r = neumann_mu2(kEquilateral, level, 2);
        EXPECT_LT(r.gap, 1e-8 * r.mu2);
        gaps.push_back(r.gap);
        mus.push_back(r.mu2);
    }
    EXPECT_NEAR(mus.back(), 16 * pi * pi / 9, 1e-5 * mus.back());
    EXPECT_TRUE(numerically_multiple(gaps, mus));
}

TEST(NeumannMu2, ScaleneGapStaysOpen) {
    std::vector<double> gaps, mus;
    std::optional<NeumannResult> prev;
    for (int level = 3; level <= 6; ++level) {
        auto r = neumann_mu2(kScalene, level, 2, {}, prev ? &*prev : nullptr);
        EXPECT_GT(r.gap, 0.05 * r.mu2);
        if (prev) EXPECT_LE(r.mu2, prev->mu2 * (1 + 1e-12));
        gaps.push_back(r.gap);
        mus.push_back(r.mu2);
        prev = std::move(r);
    }
    EXPECT_FALSE(numerically_multiple(gaps, mus));
}

TEST(MixedLambda1, ClosedForms) {
    const auto hyp = mixed_lambda1(kRightIsosceles, BoundarySpec::dirichlet_on({SideId::z2z3}), 5, 2);
    EXPECT_NEAR(hyp.lambda1, pi * pi, 1e-6 * pi * pi);
    EXPECT_TRUE(hyp.positive);
    // eigenfunction is cos(pi x) + cos(pi y) up to scale
    const double scale = hyp.u[0] / 2.0;
    for (int i = 0; i < hyp.mesh.node_count(); i += 7) {
        const Point2 p = hyp.mesh.nodes[i];
        EXPECT_NEAR(hyp.u[i], scale * (std::cos(pi * p.x1) + std::cos(pi * p.x2)), 1e-4 * std::abs(scale));
    }
    const auto all = mixed_lambda1(kRightIsosceles, BoundarySpec::all_dirichlet(), 6, 2);
    EXPECT_NEAR(all.lambda1, 5 * pi * pi, 1e-6 * 5 * pi * pi);
    EXPECT_TRUE(all.positive);
}

TEST(MixedLambda1, NeedsDirichlet) {
    EXPECT_THROW(mixed_lambda1(kScalene, BoundarySpec::all_neumann(), 2, 1), Error);
}

TEST(MixedLambda1, LongestSideBelowFullDirichlet) {
    std::mt19937_64 rng(0x5EED);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 5; ++i) {
        const Triangle t = canonicalize(Triangle({0, 0}, {1, 0}, {u(rng), 0.3 + u(rng)})).triangle;
        const auto l = mixed_lambda1(t, BoundarySpec::from_ranks(t, "L"), 4, 2);
        const auto d = mixed_lambda1(t, BoundarySpec::all_dirichlet(), 4, 2);
        EXPECT_LT(l.lambda1, d.lambda1);
    }
}

TEST(MixedLambda1, NeumannBelowTwoSidedDirichlet) {
    // mu2 <= lambda1 when the Neumann part is a single side
    std::mt19937_64 rng(0x5EED);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 5; ++i) {
        const Triangle t = canonicalize(Triangle({0, 0}, {1, 0}, {u(rng), 0.2 + u(rng)})).triangle;
        const double mu2 = neumann_mu2(t, 4, 2).mu2;
        for (const char* ranks : {"MS", "LS", "LM"}) {
            EXPECT_LE(mu2, mixed_lambda1(t, BoundarySpec::from_ranks(t, ranks), 4, 2).lambda1) << ranks;
        }
    }
}

TEST(Richardson, GeometricSequence) {
    std::vector<LevelValue> v;
    for (int k = 2; k <= 5; ++k) v.push_back({k, 3.0 + 0.7 * std::pow(4.0, -k)});
    const auto e = richardson(v, 2.0);
    EXPECT_NEAR(e.extrapolated, 3.0, 1e-14);
    EXPECT_NEAR(e.observed_order, 2.0, 1e-9);
    EXPECT_FALSE(e.order_flag);
    EXPECT_TRUE(e.reliable);
    EXPECT_GE(e.error_bar, std::abs(e.extrapolated - v.back().value) / 3);
}

TEST(Richardson, ConstantAndNonMonotone) {
    const std::vector<LevelValue> c{{1, 2.0}, {2, 2.0}, {3, 2.0}};
    const auto e = richardson(c, 2.0);
    EXPECT_TRUE(e.order_flag);
    EXPECT_EQ(e.error_bar, 0.0);
    EXPECT_EQ(e.extrapolated, 2.0);

    const std::vector<LevelValue> bad{{1, 2.0}, {2, 1.0}, {3, 1.5}};
    const auto f = richardson(bad, 2.0);
    EXPECT_FALSE(f.reliable);
    EXPECT_TRUE(f.increasing_flag);
    EXPECT_GT(f.error_bar, 0.0);

    const std::vector<LevelValue> two{{1, 2.0}, {2, 1.0}};
    EXPECT_THROW(richardson(two, 2.0), Error);
    const std::vector<LevelValue> gap{{1, 2.0}, {2, 1.0}, {4, 0.9}};
    EXPECT_THROW(richardson(gap, 2.0), Error);
}

TEST(Richardson, HalfEquilateralP1) {
    const auto e = neumann_estimate(kHalfEquilateral, 4, 7, 1);
    EXPECT_NEAR(e.extrapolated, 4 * pi * pi / 9, 1e-6 * e.extrapolated);
    EXPECT_NEAR(e.observed_order, 2.0, 0.3);
    EXPECT_FALSE(e.increasing_flag);
}

TEST(Prolongate, ExactForNestedP2) {
    const Mesh coarse = refine(kScalene, 2, 2);
    const Mesh fine = refine(kScalene, 3, 2);
    auto f = [](Point2 p) { return 1.0 + p.x1 - 2 * p.x2 + 0.5 * p.x1 * p.x2 - p.x2 * p.x2; };
    const Eigen::VectorXd u = prolongate(coarse, interpolate(coarse, f), fine);
    EXPECT_LT((u - interpolate(fine, f)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(MixedEstimate, SectorFanFamily) {
    // Dirichlet on the chords, Neumann on the radii: tends to j01^2 / R^2 as segments grow
    const double alpha = pi / 2;
    const auto e = mixed_estimate([&](int level) { return sector_fan(alpha, 1.0, 16, level, 2); },
                                  BoundarySpec::dirichlet_on({SideId::z2z3}), 1, 3, 2);
    EXPECT_GT(e.extrapolated, 5.7831859629467845);  // j01^2, the polygon sits inside the disc sector
    EXPECT_LT(e.extrapolated, 5.7831859629467845 * 1.01);
}

TEST(SmallestPairs, StallsAtRoundoff) {
    const Mesh m = refine(kScalene, 3, 2);
    const auto a = assemble(m);
    const auto r = reduce(a, m, BoundarySpec::dirichlet_on({SideId::z1z2}));
    SolverOptions tight;
    tight.tol = 1e-15;
    const auto s = smallest_pairs(r.K, r.M, 1, 0.0, tight);
    EXPECT_TRUE(s.stagnated);
    const auto plain = smallest_pairs(r.K, r.M, 1, 0.0);
    EXPECT_FALSE(plain.stagnated);
    EXPECT_NEAR(s.eigenvalues[0], plain.eigenvalues[0], 1e-12 * plain.eigenvalues[0]);
    tight.tol = 1e-19;
    EXPECT_THROW(smallest_pairs(r.K, r.M, 1, 0.0, tight), Error);
}

TEST(EstimateMesh, SplitsOnlyFlatTriangles) {
    EXPECT_FALSE(estimate_mesh(kScalene, 2, 2).up_element.empty());
    const Triangle flat({0, 0}, {1, 0}, {0.4, 0.05});
    EXPECT_TRUE(estimate_mesh(flat, 2, 2).up_element.empty());
    // the split mesh reproduces a closed form
    const auto hyp = mixed_lambda1(refine_split(kRightIsosceles, 5, 2), BoundarySpec::dirichlet_on({SideId::z2z3}));
    EXPECT_NEAR(hyp.lambda1, pi * pi, 1e-6 * pi * pi);
    const auto mu = neumann_mu2(refine_split(kHalfEquilateral, 4, 2));
    EXPECT_NEAR(mu.mu2, 4 * pi * pi / 9, 1e-5);
}

TEST(NeumannEstimate, FlatTriangleConverges) {
    // largest angle about 2.9: the uniform lattice keeps that angle in every element
    const Triangle flat({0, 0}, {1, 0}, {0.4, 0.05});
    const auto e = neumann_estimate(flat, 3, 5, 2);
    EXPECT_TRUE(e.reliable);
    EXPECT_LT(e.error_bar, 1e-4 * e.extrapolated);
}
