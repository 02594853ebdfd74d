#include "hotspots/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "hotspots/error.hpp"

namespace hotspots {

namespace {
constexpr double pi = std::numbers::pi;

bool accept(double a, double b, const SampleMargins& m) {
    std::array<double, 3> ang{a, b, pi - a - b};
    std::sort(ang.begin(), ang.end());
    if (ang[0] < m.min_angle || ang[2] > m.max_angle || ang[2] <= m.min_angle_above) return false;
    const double s = std::sin(ang[0]), md = std::sin(ang[1]), l = std::sin(ang[2]);
    return (md - s) / l >= m.gap_short_medium && (l - md) / l >= m.gap_medium_long;
}
}  // namespace

Triangle triangle_from_angles(double angle_z1, double angle_z2) {
    const double angle_z3 = pi - angle_z1 - angle_z2;
    if (!(angle_z1 > 0 && angle_z2 > 0 && angle_z3 > 0)) {
        throw Error(ErrorCode::invalid_argument, "angles must be positive and sum below pi");
    }
    // law of sines with |z1z2| = 1
    const double r = std::sin(angle_z2) / std::sin(angle_z3);
    return Triangle({0, 0}, {1, 0}, {r * std::cos(angle_z1), r * std::sin(angle_z1)});
}

SampleMargins census_acute_margins() {
    SampleMargins m;
    m.max_angle = pi / 2 - 0.25;
    m.min_angle = 0.2;
    m.gap_short_medium = 0.1;
    m.gap_medium_long = 0.02;
    return m;
}

SampleMargins census_obtuse_margins() {
    SampleMargins m;
    m.max_angle = pi - 0.4;
    m.min_angle_above = pi / 2 - 1e-12;
    m.min_angle = 0.15;
    m.gap_short_medium = 0.05;
    m.gap_medium_long = 0.02;
    return m;
}

Triangle sample_triangle(std::mt19937_64& rng, const SampleMargins& m) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int attempt = 0; attempt < 1000000; ++attempt) {
        double x = u(rng), y = u(rng);
        if (x + y > 1) {
            x = 1 - x;
            y = 1 - y;
        }
        const double a = pi * x, b = pi * y;
        if (pi - a - b <= 0 || !accept(a, b, m)) continue;
        return canonicalize(triangle_from_angles(a, b)).triangle;
    }
    throw Error(ErrorCode::invalid_argument, "sample margins reject every triangle");
}

std::vector<Triangle> sample_triangles(std::uint64_t seed, int count, const SampleMargins& m) {
    std::mt19937_64 rng(seed);
    std::vector<Triangle> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) out.push_back(sample_triangle(rng, m));
    return out;
}

Triangle isosceles(double apex_angle) {
    if (!(apex_angle > 0 && apex_angle < pi)) throw Error(ErrorCode::invalid_argument, "apex angle out of range");
    const double base = 0.5 * (pi - apex_angle);
    return triangle_from_angles(base, base);
}

std::vector<Triangle> isosceles_family(int count, double lo, double hi) {
    std::vector<Triangle> out;
    for (int k = 0; k < count; ++k) {
        const double a = count == 1 ? lo : lo + (hi - lo) * k / (count - 1);
        out.push_back(isosceles(a));
    }
    return out;
}

std::vector<Triangle> right_family(int count, double lo, double hi) {
    std::vector<Triangle> out;
    for (int k = 0; k < count; ++k) {
        const double a = count == 1 ? lo : lo + (hi - lo) * k / (count - 1);
        out.push_back(canonicalize(triangle_from_angles(pi / 2, a)).triangle);
    }
    return out;
}

}  // namespace hotspots
