#pragma once

#include <array>
#include <string>
#include <vector>

#include "hotspots/polynomial.hpp"

namespace hotspots {

// cos^2(b/2 - g/2) sin b / (4 cos(b/2 + g/2) sin^2 g) * h / sin h, h = (pi - b + g) / 2
double F(double beta, double gamma);
// F in the variables s = tan(beta/2), t = tan(gamma/2); needs s > 0, 0 < st < 1.
double Fcal(double s, double t);

// beta >= max{(pi + gamma)/3, (pi - gamma)/2}, beta + gamma < pi, gamma > 0
bool F_region(double beta, double gamma);

struct ScanResult {
    double min_value = 0.0;
    double arg1 = 0.0;  // beta or s at the minimum
    double arg2 = 0.0;  // gamma or t at the minimum
    long long samples = 0;
    int resolution = 0;
    double eps = 0.0;
};

struct ScanRow {
    double arg1, arg2, value;
};

// resolution x resolution grid over the F region kept eps inside its boundary.
ScanResult F_scan(int resolution, double eps, std::vector<ScanRow>* rows = nullptr);

struct BoundaryCurve {
    double true_min = 0.0;  // min over beta of F(beta, 3 beta - pi)
    double true_argmin = 0.0;
    double first_factor_min = 0.0;   // min of 1 / (8 cos b (1 - 4 cos^2 b)^2)
    double second_factor_min = 0.0;  // min of b / sin b
    double factorized_bound = 0.0;   // product of the two minima
};

double boundary_constant();  // 25 sqrt5 pi / (96 sqrt3)
BoundaryCurve boundary_curve(int resolution = 20000);

// s in [1, s_max] (log-spaced), t in (0, 1/s) kept eps inside.
ScanResult Fcal_scan(int resolution, double eps, double s_max = 50.0);

struct SignPattern {
    double t = 0.0;
    std::string pattern;  // run-length signs of d/ds Fcal over s in (0, 1), e.g. "+", "+-"
    int sign_changes = 0;
    bool ok = false;  // at most one change and positive first
};

std::vector<SignPattern> Fcal_slope_scan(const std::vector<double>& ts, int resolution = 4000);

struct IdentityVerdict {
    std::string name;
    bool pass = false;
    int mismatch_index = -1;
    IntPolynomial lhs;
    IntPolynomial rhs;
};

// (1+x)^4 (1+x^2)^3 - 512 (1-x)^2 x^4 against the sum of nonnegative terms.
IdentityVerdict positivity_identity();
// 4 c0 c2 - c1^2 = 4 (x+1)^2 ((x^2 - x + 1)^2 - 10 x^2)
IdentityVerdict discriminant_identity();
IntPolynomial discriminant_c0();
IntPolynomial discriminant_c1();
IntPolynomial discriminant_c2();

struct SampledIdentity {
    bool pass = false;
    int samples = 0;
    double max_error = 0.0;  // relative to max(1, |lhs|)
};

// The irrational factorization with sqrt(10) checked at rational sample points.
SampledIdentity sqrt10_identity_sampled(int samples = 64);

struct ThresholdCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

// 2 cos(pi/5) = (sqrt5 + 1)/2 against 2 j01 / pi
ThresholdCheck golden_threshold();

// Planar sector bound lambda_1 >= (alpha/2) j01^2 / area.
double cone_bound(double alpha, double area);

double mu2_diameter_bound(double diam);                // (2 j01 / diam)^2
double bisector_dirichlet_bound(double max_distance);  // (j01 / max(|pz1|, |pz2|))^2
double altitude_bound(double pz2, double angle_z2);        // ((pi/2) / (|pz2| sin angle))^2
double altitude_j01_bound(double z3z2, double angle_z2);       // ((j01 + pi/2) / (|z3z2| sin angle))^2

}  // namespace hotspots
