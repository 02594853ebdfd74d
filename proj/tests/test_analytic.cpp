#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hotspots/analytic.hpp"
#include "hotspots/error.hpp"
#include "hotspots/special_functions.hpp"

using namespace hotspots;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST(SpecialFunctions, J0MatchesStdlib) {
    EXPECT_EQ(hotspots::j0(0.0), 1.0);
    for (int k = 0; k <= 400; ++k) {
        const double x = 0.05 * k;
        EXPECT_NEAR(hotspots::j0(x), std::cyl_bessel_j(0.0, x), 1e-14) << x;
        EXPECT_NEAR(hotspots::j0(-x), hotspots::j0(x), 0.0);
    }
    for (int k = 0; k < 50; ++k) {
        const double x = 8.0 + 0.7 * k;
        EXPECT_NEAR(hotspots::j0(x), std::cyl_bessel_j(0.0, x), 1e-14) << x;
    }
}

TEST(SpecialFunctions, J1SeriesMatchesStdlib) {
    for (int k = 0; k <= 80; ++k) {
        const double x = 0.1 * k;
        EXPECT_NEAR(j1_series(x), std::cyl_bessel_j(1.0, x), 1e-14) << x;
    }
}

TEST(SpecialFunctions, FirstZero) {
    EXPECT_NEAR(j01(), 2.404825557695773, 1e-12);
    EXPECT_NEAR(std::cyl_bessel_j(0.0, j01()), 0.0, 1e-15);
    EXPECT_NEAR(2.0 * j01() / pi, 1.5309, 1e-4);
}

TEST(Polynomial, ArithmeticAndPrinting) {
    const IntPolynomial x = IntPolynomial::x();
    const IntPolynomial p = pow(x + IntPolynomial{1}, 3);
    EXPECT_EQ(p, (IntPolynomial{1, 3, 3, 1}));
    EXPECT_EQ(p.to_string(), "x^3 + 3x^2 + 3x + 1");
    EXPECT_EQ((x - x).degree(), -1);
    EXPECT_DOUBLE_EQ(p(2.0), 27.0);
    EXPECT_THROW(pow(IntPolynomial{1}, -1), Error);
}

TEST(Polynomial, OverflowThrows) {
    const IntPolynomial big{INT64_C(1) << 40};
    EXPECT_THROW(big * big, Error);
}

TEST(Identities, PositivityExact) {
    // the displayed sum does not expand to the left side; the verdict must say so
    const IdentityVerdict v = positivity_identity();
    EXPECT_FALSE(v.pass);
    EXPECT_EQ(v.mismatch_index, 4);
    EXPECT_EQ(v.lhs.degree(), 10);
    const IntPolynomial x = IntPolynomial::x();
    const IntPolynomial one{1};
    EXPECT_EQ(v.lhs - v.rhs, 128 * pow(x, 4) * (x - one) * (x * x - 5 * x + IntPolynomial{2}));
    EXPECT_EQ(v.lhs, (IntPolynomial{1, 4, 9, 16, -490, 1048, -490, 16, 9, 4, 1}));
    EXPECT_EQ(v.lhs[0], 1);
    EXPECT_EQ(v.rhs[0], 1);
    EXPECT_DOUBLE_EQ(v.lhs(1.0), 128.0);
    EXPECT_DOUBLE_EQ(v.rhs(1.0), 128.0);
    // independent expansion by binomial sums
    auto binom = [](int n, int k) {
        double r = 1;
        for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    for (double xv : {0.3, 0.5, 2.0, -1.5}) {
        double lhs = 0;
        for (int a = 0; a <= 4; ++a) {
            for (int b = 0; b <= 3; ++b) lhs += binom(4, a) * binom(3, b) * std::pow(xv, a + 2 * b);
        }
        lhs -= 512 * (1 - xv) * (1 - xv) * std::pow(xv, 4);
        EXPECT_NEAR(v.lhs(xv), lhs, 1e-9 * std::max(1.0, std::abs(lhs)));
    }
}

TEST(Identities, Discriminant) {
    const IdentityVerdict v = discriminant_identity();
    EXPECT_TRUE(v.pass) << v.mismatch_index;
    const SampledIdentity s = sqrt10_identity_sampled(64);
    EXPECT_TRUE(s.pass);
    EXPECT_EQ(s.samples, 64);
    EXPECT_LT(s.max_error, 1e-12);
    EXPECT_EQ(discriminant_c1(), (IntPolynomial{0, -2, 2}));
}

TEST(Analytic, FcalIsFInHalfAngleTangents) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    while (checked < 500) {
        const double beta = 0.05 + 3.0 * u(rng);
        const double gamma = 0.05 + 3.0 * u(rng);
        if (beta + gamma > pi - 0.05) continue;
        const double f = F(beta, gamma);
        EXPECT_NEAR(Fcal(std::tan(beta / 2), std::tan(gamma / 2)), f, 1e-12 * std::max(1.0, std::abs(f)));
        ++checked;
    }
}

TEST(Analytic, RegionPredicate) {
    EXPECT_TRUE(F_region(1.4, 0.5));
    EXPECT_FALSE(F_region(1.3, 0.5));  // below (pi - g)/2
    EXPECT_FALSE(F_region(1.3, 1.2));  // below (pi + g)/3
    EXPECT_FALSE(F_region(2.8, 0.5));  // beta + gamma >= pi
    EXPECT_FALSE(F_region(1.5, 0.0));
}

TEST(Analytic, FScanAboveOne) {
    std::vector<ScanRow> rows;
    const ScanResult r = F_scan(512, 1e-4, &rows);
    EXPECT_GT(r.min_value, 1.05);
    EXPECT_EQ(static_cast<long long>(rows.size()), r.samples);
    EXPECT_GT(r.samples, 512LL * 500);
    for (std::size_t k = 0; k < rows.size(); k += 97) EXPECT_TRUE(F_region(rows[k].arg1, rows[k].arg2));
    EXPECT_THROW(F_scan(1, 1e-4), Error);
}

TEST(Analytic, BoundaryCurve) {
    const double c = boundary_constant();
    EXPECT_NEAR(c, 1.0562, 1e-4);
    const BoundaryCurve b = boundary_curve();
    EXPECT_NEAR(b.first_factor_min, 25.0 * std::sqrt(5.0) / 64.0, 1e-9);
    EXPECT_NEAR(b.second_factor_min, 2.0 * pi / (3.0 * std::sqrt(3.0)), 1e-15);
    EXPECT_NEAR(b.factorized_bound, c, 1e-6);
    EXPECT_GE(b.true_min, b.factorized_bound);
    EXPECT_GT(b.true_min, 1.0);
    // on gamma = 3 beta - pi, F reduces to the product of the two factors
    for (double beta : {1.1, 1.25, 1.4, 1.5}) {
        const double cb = std::cos(beta);
        const double d = 1.0 - 4.0 * cb * cb;
        const double closed = 1.0 / (8.0 * cb * d * d) * (beta / std::sin(beta));
        EXPECT_NEAR(F(beta, 3.0 * beta - pi), closed, 1e-12 * closed);
    }
    EXPECT_NEAR(F(b.true_argmin, 3 * b.true_argmin - pi), b.true_min, 1e-14);
}

TEST(Analytic, FcalScan) {
    const ScanResult r = Fcal_scan(400, 1e-4);
    EXPECT_GT(r.min_value, 1.0);
    EXPECT_GE(r.arg1, 1.0);
    EXPECT_LT(r.arg1 * r.arg2, 1.0);
}

TEST(Analytic, FcalSlopePatterns) {
    std::vector<double> ts;
    for (int k = 1; k <= 9; ++k) ts.push_back(0.1 * k);
    for (const SignPattern& p : Fcal_slope_scan(ts)) {
        EXPECT_TRUE(p.ok) << p.t << " " << p.pattern;
        EXPECT_LE(p.sign_changes, 1);
        EXPECT_EQ(p.pattern[0], '+');
    }
}

TEST(Analytic, Case13Threshold) {
    const ThresholdCheck c = golden_threshold();
    EXPECT_TRUE(c.holds);
    EXPECT_NEAR(c.lhs, (std::sqrt(5.0) + 1) / 2, 1e-15);
    EXPECT_NEAR(c.rhs, 1.5309, 1e-4);
}

TEST(Analytic, ConeBound) {
    const double j = 2.404825557695773;
    EXPECT_NEAR(cone_bound(pi / 2, 1.0), pi / 4 * j * j, 1e-12);
    EXPECT_NEAR(cone_bound(pi / 2, 1.0), 4.542, 1e-3);
    EXPECT_NEAR(cone_bound(1.0, 2.0), 0.5 * cone_bound(1.0, 1.0), 1e-14);
    // sector of radius R has area alpha R^2 / 2 and lambda_1 = (j / R)^2
    EXPECT_NEAR(cone_bound(0.7, 0.35 * 4.0), (j / 2.0) * (j / 2.0), 1e-12);
    EXPECT_THROW(cone_bound(0.0, 1.0), Error);
    EXPECT_THROW(cone_bound(1.0, -1.0), Error);
}

TEST(Analytic, EigenvalueBounds) {
    const double j = 2.404825557695773;
    EXPECT_NEAR(mu2_diameter_bound(2.0), j * j, 1e-12);
    EXPECT_NEAR(bisector_dirichlet_bound(0.5), 4 * j * j, 1e-11);
    EXPECT_NEAR(altitude_bound(1.0, pi / 2), pi * pi / 4, 1e-12);
    EXPECT_NEAR(altitude_j01_bound(1.0, pi / 2), (j + pi / 2) * (j + pi / 2), 1e-12);
}
