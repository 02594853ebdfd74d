#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hotspots/geometry.hpp"

namespace hotspots {

// Canonical triangle z1 = 0, z2 = 1 with the given inner angles at z1 and z2.
Triangle triangle_from_angles(double angle_z1, double angle_z2);

struct SampleMargins {
    double max_angle = 1.5707963267948966;  // inclusive upper bound on the largest angle
    double min_angle = 0.0;
    double min_angle_above = 0.0;           // largest angle must exceed this
    double gap_short_medium = 0.0;          // (|M| - |S|) / |L| lower bound
    double gap_medium_long = 0.0;           // (|L| - |M|) / |L| lower bound
};

// Acute triangles whose shortest side saddle sits at least a few mesh cells
// away from z1 at levels 6 and 7. Found by scanning the saddle position.
SampleMargins census_acute_margins();
// Right and obtuse triangles with a bounded aspect ratio.
SampleMargins census_obtuse_margins();

// Uniform on the angle simplex, rejected against the margins, returned canonical.
Triangle sample_triangle(std::mt19937_64& rng, const SampleMargins& m);
std::vector<Triangle> sample_triangles(std::uint64_t seed, int count, const SampleMargins& m);

// Isosceles with the apex at z3 before canonicalization.
Triangle isosceles(double apex_angle);
// Apex angles spread uniformly over [lo, hi].
std::vector<Triangle> isosceles_family(int count, double lo, double hi);
// Right triangles with the smaller acute angle spread over [lo, hi].
std::vector<Triangle> right_family(int count, double lo, double hi);

}  // namespace hotspots
