#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hotspots/error.hpp"
#include "hotspots/sampling.hpp"

using namespace hotspots;

namespace {
constexpr double pi = std::numbers::pi;

std::array<double, 3> sorted_angles(const Triangle& t) {
    std::array<double, 3> a{t.angle(VertexId::z1), t.angle(VertexId::z2), t.angle(VertexId::z3)};
    std::sort(a.begin(), a.end());
    return a;
}
}  // namespace

TEST(Sampling, TriangleFromAngles) {
    const Triangle t = triangle_from_angles(pi / 2, pi / 3);
    EXPECT_NEAR(t.angle(VertexId::z1), pi / 2, 1e-14);
    EXPECT_NEAR(t.angle(VertexId::z2), pi / 3, 1e-14);
    EXPECT_NEAR(t.vertex(VertexId::z3).x2, std::sqrt(3.0), 1e-14);
    EXPECT_THROW(triangle_from_angles(2.0, 1.5), Error);
}

TEST(Sampling, CensusMarginsRespected) {
    const SampleMargins m = census_acute_margins();
    const auto ts = sample_triangles(42, 200, m);
    ASSERT_EQ(ts.size(), 200u);
    for (const Triangle& t : ts) {
        EXPECT_TRUE(is_canonical(t));
        const auto a = sorted_angles(t);
        EXPECT_LE(a[2], m.max_angle);
        EXPECT_GE(a[0], m.min_angle);
        const SideLabeling s = label_sides(t);
        const double l = s.lengths[index(s.longest)], md = s.lengths[index(s.medium)], sh = s.lengths[index(s.shortest)];
        EXPECT_GE((md - sh) / l, m.gap_short_medium - 1e-12);
        EXPECT_GE((l - md) / l, m.gap_medium_long - 1e-12);
        EXPECT_EQ(classify(t).angle_class, AngleClass::acute);
        EXPECT_EQ(classify(t).symmetry_class, SymmetryClass::scalene);
    }
    // same seed, same triangles
    const auto again = sample_triangles(42, 200, m);
    for (std::size_t k = 0; k < ts.size(); ++k) EXPECT_EQ(ts[k].vertex(2).x1, again[k].vertex(2).x1);
}

TEST(Sampling, ObtuseMargins) {
    for (const Triangle& t : sample_triangles(3, 100, census_obtuse_margins())) {
        EXPECT_EQ(classify(t).angle_class, AngleClass::obtuse);
    }
}

TEST(Sampling, Families) {
    for (const Triangle& t : isosceles_family(10, pi / 3 + 0.1, pi - 0.4)) {
        EXPECT_EQ(classify(t).symmetry_class, SymmetryClass::super_equilateral);
    }
    const auto sub = isosceles_family(5, 0.1, pi / 3 - 0.1);
    for (const Triangle& t : sub) EXPECT_EQ(classify(t).symmetry_class, SymmetryClass::sub_equilateral);
    EXPECT_NEAR(sub.front().angle(VertexId::z3), 0.1, 1e-13);
    for (const Triangle& t : right_family(6, 0.2, pi / 4 - 0.05)) {
        EXPECT_EQ(classify(t).angle_class, AngleClass::right);
        EXPECT_TRUE(is_canonical(t));
    }
    EXPECT_THROW(isosceles(pi), Error);
}

TEST(Sampling, ImpossibleMarginsThrow) {
    SampleMargins m;
    m.max_angle = 0.5;  // below pi/3
    std::mt19937_64 rng(1);
    EXPECT_THROW(sample_triangle(rng, m), Error);
}
