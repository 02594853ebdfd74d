#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hotspots/analytic.hpp"
#include "hotspots/error.hpp"
#include "hotspots/inequality.hpp"
#include "hotspots/mesh.hpp"
#include "hotspots/sampling.hpp"
#include "hotspots/special_functions.hpp"

using namespace hotspots;

namespace {

constexpr double pi = std::numbers::pi;
const double sqrt3 = std::sqrt(3.0);

LabOptions fast() {
    LabOptions o;
    o.lo = 3;
    o.hi = 5;
    o.escalate_to = 6;
    return o;
}

Bounded bar(double v, double e) { return {v, e, 5}; }

}  // namespace

TEST(Inequality, Claims) {
    EXPECT_EQ(claim_less(bar(1, 0.1), bar(2, 0.1)), Verdict::strict);
    EXPECT_EQ(claim_less(bar(1, 0.6), bar(2, 0.6)), Verdict::inconclusive);
    EXPECT_EQ(claim_less(bar(2, 0.1), bar(1, 0.1)), Verdict::violated);
    EXPECT_EQ(claim_less_equal(bar(1, 0.6), bar(1.1, 0.6)), Verdict::equal);
    EXPECT_EQ(claim_less_equal(bar(3, 0.1), bar(1, 0.1)), Verdict::violated);
    EXPECT_EQ(claim_equal(bar(1, 1e-3), bar(1.0005, 1e-3)), Verdict::equal);
    EXPECT_EQ(claim_equal(bar(1, 1e-3), bar(1.1, 1e-3)), Verdict::violated);
    EXPECT_TRUE(passes(Verdict::skipped));
    EXPECT_FALSE(passes(Verdict::inconclusive));
    EXPECT_STREQ(to_string(Verdict::violated), "violated");
}

TEST(Inequality, ErrorFloor) {
    EigenEstimate e;
    e.extrapolated = 100.0;
    e.error_bar = 0.0;
    EXPECT_DOUBLE_EQ(bounded(e, 1e-9).error, 1e-7);
    e.extrapolated = 0.01;
    EXPECT_DOUBLE_EQ(bounded(e, 1e-9).error, 1e-9);
}

TEST(Inequality, CompareEscalatesUntilResolved) {
    // the two eigenvalues differ by less than the level-4 bar
    const LabOptions opt = fast();
    int calls = 0;
    LazyEstimate a("a", [&](int, int hi) {
        ++calls;
        EigenEstimate e;
        e.extrapolated = 1.0;
        e.error_bar = std::pow(10.0, -hi);
        e.per_level = {{hi, 1.0}};
        return e;
    });
    const Check c = compare("a < 1.0002", &a, {}, Relation::less, nullptr, exact(1.0002), opt);
    EXPECT_EQ(c.verdict, Verdict::strict);
    EXPECT_EQ(c.lhs.level, 5);
    EXPECT_EQ(calls, 1);

    const Check d = compare("a < 1.000002", &a, {}, Relation::less, nullptr, exact(1.000002), opt);
    EXPECT_EQ(d.verdict, Verdict::strict);
    EXPECT_EQ(d.lhs.level, 6);
    EXPECT_EQ(a.finest_computed(), 6);

    const Check f = compare("a < 1.0000000001", &a, {}, Relation::less, nullptr, exact(1.0000000001), opt);
    EXPECT_EQ(f.verdict, Verdict::inconclusive);
    EXPECT_FALSE(f.note.empty());
}

TEST(Inequality, ScaleneChainIsStrict) {
    const Triangle t = canonicalize(Triangle({0, 0}, {1, 0}, {0.3, 0.9})).triangle;
    const InequalityChainReport r = chain(t, fast());
    EXPECT_TRUE(r.all_strict());
    for (int k = 0; k + 1 < 7; ++k) EXPECT_LT(r.estimates[k].value, r.estimates[k + 1].value);
    for (bool e : r.expected_equal) EXPECT_FALSE(e);
}

TEST(Inequality, EquilateralTiesAreEqual) {
    const Triangle t({0, 0}, {1, 0}, {0.5, sqrt3 / 2});
    const InequalityChainReport r = chain(t, fast());
    EXPECT_EQ(r.verdicts[0].verdict, Verdict::equal);
    EXPECT_EQ(r.verdicts[1].verdict, Verdict::equal);
    EXPECT_EQ(r.verdicts[2].verdict, Verdict::strict);
    EXPECT_EQ(r.verdicts[3].verdict, Verdict::equal);
    EXPECT_EQ(r.verdicts[4].verdict, Verdict::equal);
    EXPECT_EQ(r.verdicts[5].verdict, Verdict::strict);
    EXPECT_EQ(r.count(Verdict::violated), 0);
}

TEST(Inequality, RightIsoscelesChainValues) {
    const Triangle t = canonicalize(Triangle({0, 0}, {1, 0}, {0, 1})).triangle;
    const InequalityChainReport r = chain(t, fast());
    // Dirichlet hypotenuse and full Dirichlet
    EXPECT_NEAR(r.estimates[2].value, pi * pi, 1e-5);
    EXPECT_NEAR(r.estimates[6].value, 5 * pi * pi, 1e-3);
    EXPECT_NEAR(r.estimates[0].value, pi * pi / 2, 1e-5);
    EXPECT_NEAR(r.estimates[3].value, 2 * pi * pi, 1e-4);
    EXPECT_EQ(r.verdicts[0].verdict, Verdict::equal);
    EXPECT_EQ(r.verdicts[4].verdict, Verdict::equal);
    EXPECT_EQ(r.count(Verdict::violated), 0);
}

TEST(Inequality, ChainSpecRanks) {
    const Triangle t = canonicalize(Triangle({0, 0}, {1, 0}, {0.3, 0.9})).triangle;
    // canonical sides: z1z2 shortest, z2z3 longest, z3z1 medium
    EXPECT_TRUE(chain_spec(t, "S").dirichlet(0));
    EXPECT_EQ(chain_spec(t, "S").dirichlet_mask(), 0b001);
    EXPECT_EQ(chain_spec(t, "M").dirichlet_mask(), 0b100);
    EXPECT_EQ(chain_spec(t, "L").dirichlet_mask(), 0b010);
    EXPECT_EQ(chain_spec(t, "LM").dirichlet_mask(), 0b110);
    EXPECT_EQ(chain_spec(t, "D").dirichlet_mask(), 0b111);
}

TEST(Inequality, BisectorSplitGeometry) {
    const Triangle t = canonicalize(Triangle({0, 0}, {1, 0}, {0.3, 0.9})).triangle;
    const BisectorSplit s = bisector_split(t);
    EXPECT_NEAR(s.near_z2.area() + s.near_z3.area(), t.area(), 1e-14);
    // bisector foot divides z2z3 in the ratio of adjacent sides
    const double r = distance(s.p, t.vertex(VertexId::z2)) / distance(s.p, t.vertex(VertexId::z3));
    EXPECT_NEAR(r, t.side_length(SideId::z1z2) / t.side_length(SideId::z3z1), 1e-12);
    EXPECT_NEAR(s.near_z2.angle(VertexId::z1), s.near_z3.angle(VertexId::z1), 1e-12);
}

TEST(Inequality, BesselBoundsHalfEquilateral) {
    const Triangle t = canonicalize(Triangle({0, 0}, {1, 0}, {0, sqrt3})).triangle;
    const LabOptions opt = fast();
    const LazyEstimate mu2 = neumann_lazy(t, opt);
    const BisectorSplit s = bisector_split(t);
    const LazyEstimate lz = mixed_lazy("z1z2p", s.near_z2, BoundarySpec::dirichlet_on({SideId::z1z2}), opt);
    const std::vector<Check> c = bessel_checks(t, mu2, lz, opt);
    ASSERT_EQ(c.size(), 4u);
    // diameter 2
    EXPECT_NEAR(c[0].rhs.value, j01() * j01(), 1e-12);
    EXPECT_NEAR(c[0].lhs.value, 4 * pi * pi / 9, 1e-5);
    for (const Check& k : c) EXPECT_EQ(k.verdict, Verdict::strict) << k.name;
    EXPECT_EQ(bisector_check(t, mu2, lz, opt).verdict, Verdict::strict);
}

TEST(Inequality, BesselEquilateralNumbers) {
    const Triangle t({0, 0}, {1, 0}, {0.5, sqrt3 / 2});
    const LabOptions opt = fast();
    const LazyEstimate mu2 = neumann_lazy(t, opt);
    const LazyEstimate lz = mixed_lazy("z1z2p", bisector_split(t).near_z2, BoundarySpec::dirichlet_on({SideId::z1z2}), opt);
    const std::vector<Check> c = bessel_checks(t, mu2, lz, opt);
    // mu2 of the unit equilateral triangle is 16 pi^2 / 9
    EXPECT_NEAR(c[0].lhs.value, 16 * pi * pi / 9, 1e-5);
    EXPECT_NEAR(c[0].rhs.value, 4 * j01() * j01(), 1e-12);
    EXPECT_EQ(c[0].verdict, Verdict::strict);
    EXPECT_EQ(c[3].verdict, Verdict::strict);
}

TEST(Inequality, ObtuseSkipsHeightBound) {
    const Triangle t = canonicalize(Triangle({0, 0}, {1, 0}, {0.4, 0.05})).triangle;
    const LabOptions opt = fast();
    const LazyEstimate mu2 = neumann_lazy(t, opt);
    const LazyEstimate lz = mixed_lazy("z1z2p", bisector_split(t).near_z2, BoundarySpec::dirichlet_on({SideId::z1z2}), opt);
    const std::vector<Check> c = bessel_checks(t, mu2, lz, opt);
    EXPECT_EQ(c[3].verdict, Verdict::skipped);
    EXPECT_FALSE(c[3].note.empty());
    for (const Check& k : c) EXPECT_NE(k.verdict, Verdict::violated) << k.name;
}

TEST(Inequality, BisectorCheckSkipsWrongOrder) {
    // z1z3 shorter than z1z2
    const Triangle t({0, 0}, {1, 0}, {0.2, 0.5});
    const LabOptions opt = fast();
    const LazyEstimate mu2 = neumann_lazy(t, opt);
    const LazyEstimate lz = mixed_lazy("z1z2p", bisector_split(t).near_z2, BoundarySpec::dirichlet_on({SideId::z1z2}), opt);
    const Check c = bisector_check(t, mu2, lz, opt);
    EXPECT_EQ(c.verdict, Verdict::skipped);
    EXPECT_EQ(mu2.finest_computed(), -1);
}

TEST(Inequality, BisectorPairIsoscelesAtZ1) {
    // apex at z1 makes the two halves congruent
    const Triangle t = canonicalize(Triangle({0, 0}, {1, 0}, {0.5, 0.6})).triangle;
    ASSERT_NEAR(t.side_length(SideId::z1z2), t.side_length(SideId::z3z1), 1e-12);
    const LabOptions opt = fast();
    const std::array<Check, 2> c = bisector_pair_checks(t, neumann_lazy(t, opt), opt);
    EXPECT_TRUE(passes(c[0].verdict));
    EXPECT_EQ(c[1].verdict, Verdict::equal);
    EXPECT_NEAR(c[1].lhs.value, c[1].rhs.value, 1e-5);
}

TEST(Inequality, BisectorPairScaleneOrder) {
    const Triangle t = canonicalize(Triangle({0, 0}, {1, 0}, {0.3, 0.9})).triangle;
    const LabOptions opt = fast();
    const std::array<Check, 2> c = bisector_pair_checks(t, neumann_lazy(t, opt), opt);
    EXPECT_EQ(c[0].verdict, Verdict::strict);
    EXPECT_EQ(c[1].verdict, Verdict::strict);
    EXPECT_EQ(c[1].name, "lambda(z1 p z3) < lambda(z1 z2 p)");
}

TEST(Inequality, SkewScanDecreases) {
    std::vector<double> a;
    for (int k = 0; k <= 10; ++k) a.push_back(0.1 * k);
    LabOptions opt = fast();
    opt.lo = 2;
    opt.hi = 4;
    for (double b : {0.6, 1.0, 1.5}) {
        const SkewScan s = skew_scan(b, a, opt);
        ASSERT_EQ(s.lambda.size(), a.size());
        ASSERT_EQ(s.steps.size(), a.size() - 1);
        EXPECT_TRUE(s.decreasing()) << "b = " << b;
    }
    EXPECT_THROW(skew_scan(0.0, a, opt), Error);
}

TEST(Inequality, SkewScanRightTriangleValue) {
    // a = 0, b = 1 is the right isosceles triangle with Dirichlet hypotenuse
    const SkewScan s = skew_scan(1.0, {0.0, 0.5}, fast());
    EXPECT_NEAR(s.lambda[0].value, pi * pi, 1e-5);
}

TEST(Inequality, ConeBoundOnSector) {
    // Dirichlet arc on a thin sector: lambda approaches (j01 / R)^2 from above,
    // and the cone bound uses the area of the sector
    const double alpha = 0.3, radius = 1.0;
    const BoundarySpec arc = BoundarySpec::dirichlet_on({SideId::z2z3});
    const EigenEstimate e = mixed_estimate([&](int level) { return sector_fan(alpha, radius, 8, level, 2); }, arc, 1, 3, 2);
    const double exact_arc = j01() * j01();
    EXPECT_NEAR(e.extrapolated, exact_arc, 2e-2 * exact_arc);
    const double sector_area = 0.5 * alpha * radius * radius;
    EXPECT_NEAR(cone_bound(alpha, sector_area), exact_arc, 1e-12);
}

TEST(Inequality, ConeChecksHold) {
    const Triangle t = canonicalize(Triangle({0, 0}, {1, 0}, {0.3, 0.9})).triangle;
    const LabOptions opt = fast();
    const std::array<LazyEstimate, 7> est = chain_estimates(t, opt);
    for (const Check& c : cone_checks(t, est, opt)) EXPECT_EQ(c.verdict, Verdict::strict) << c.name;
    for (const Check& c : flat_neumann_checks(neumann_lazy(t, opt), est, opt)) EXPECT_EQ(c.verdict, Verdict::strict) << c.name;
}

TEST(Inequality, BatteryOnSamples) {
    LabOptions opt = fast();
    for (const Triangle& t : sample_triangles(11, 3, SampleMargins{.max_angle = pi - 0.3, .min_angle = 0.2,
                                                                   .gap_short_medium = 0.05, .gap_medium_long = 0.05})) {
        const InequalityReport r = inequality_battery(t, opt);
        EXPECT_TRUE(is_canonical(r.triangle));
        EXPECT_FALSE(r.any_violated());
        EXPECT_EQ(r.checks.size(), 13u);
        EXPECT_GT(r.mu2.value, 0.0);
    }
    const InequalityReport iso = inequality_battery(isosceles(1.2), opt);
    EXPECT_FALSE(iso.any_violated());
}
