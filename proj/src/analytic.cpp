#include "hotspots/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hotspots/error.hpp"
#include "hotspots/special_functions.hpp"

namespace hotspots {

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

double F(double beta, double gamma) {
    const double c = std::cos(0.5 * (beta - gamma));
    const double sg = std::sin(gamma);
    const double h = 0.5 * (pi - beta + gamma);
    return c * c * std::sin(beta) / (4.0 * std::cos(0.5 * (beta + gamma)) * sg * sg) * (h / std::sin(h));
}

double Fcal(double s, double t) {
    const double st = s * t;
    const double a = 1.0 + t * t;
    return a * a / (8.0 * t * t) * ((1.0 + st) * s / ((1.0 - st) * (1.0 + s * s))) *
           (std::atan(1.0 / s) + std::atan(t));
}

bool F_region(double beta, double gamma) {
    return gamma > 0.0 && beta + gamma < pi && beta >= std::max((pi + gamma) / 3.0, (pi - gamma) / 2.0);
}

ScanResult F_scan(int resolution, double eps, std::vector<ScanRow>* rows) {
    if (resolution < 2 || !(eps > 0.0)) throw Error(ErrorCode::invalid_argument, "scan needs resolution >= 2, eps > 0");
    ScanResult out;
    out.resolution = resolution;
    out.eps = eps;
    out.min_value = std::numeric_limits<double>::infinity();
    // the region is nonempty only for gamma < pi/2
    for (int i = 0; i < resolution; ++i) {
        const double gamma = eps + (pi / 2 - 2 * eps) * i / (resolution - 1);
        const double lo = std::max((pi + gamma) / 3.0, (pi - gamma) / 2.0) + eps;
        const double hi = pi - gamma - eps;
        if (hi < lo) continue;
        for (int j = 0; j < resolution; ++j) {
            const double beta = lo + (hi - lo) * j / (resolution - 1);
            const double v = F(beta, gamma);
            ++out.samples;
            if (rows) rows->push_back({beta, gamma, v});
            if (v < out.min_value) {
                out.min_value = v;
                out.arg1 = beta;
                out.arg2 = gamma;
            }
        }
    }
    return out;
}

double boundary_constant() { return 25.0 * std::sqrt(5.0) * pi / (96.0 * std::sqrt(3.0)); }

BoundaryCurve boundary_curve(int resolution) {
    BoundaryCurve out;
    out.true_min = out.first_factor_min = out.second_factor_min = std::numeric_limits<double>::infinity();
    auto first = [](double b) {
        const double c = std::cos(b);
        const double d = 1.0 - 4.0 * c * c;
        return 1.0 / (8.0 * c * d * d);
    };
    auto scan = [&](auto&& f, double& best, double* arg) {
        // open interval (pi/3, pi/2), then golden-section polish around the best sample
        const double a = pi / 3, b = pi / 2;
        int k_best = 1;
        for (int k = 1; k < resolution; ++k) {
            const double x = a + (b - a) * k / resolution;
            const double v = f(x);
            if (v < best) {
                best = v;
                k_best = k;
            }
        }
        double lo = a + (b - a) * (k_best - 1) / resolution;
        double hi = a + (b - a) * (k_best + 1) / resolution;
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        for (int it = 0; it < 100; ++it) {
            const double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
            if (f(x1) < f(x2)) {
                hi = x2;
            } else {
                lo = x1;
            }
        }
        const double x = 0.5 * (lo + hi);
        best = std::min(best, f(x));
        if (arg) *arg = x;
    };
    scan([](double b) { return F(b, 3.0 * b - pi); }, out.true_min, &out.true_argmin);
    scan(first, out.first_factor_min, nullptr);
    // b / sin b increases on (pi/3, pi/2), so its infimum is the left end value
    out.second_factor_min = (pi / 3) / std::sin(pi / 3);
    out.factorized_bound = out.first_factor_min * out.second_factor_min;
    return out;
}

ScanResult Fcal_scan(int resolution, double eps, double s_max) {
    if (resolution < 2 || !(eps > 0.0)) throw Error(ErrorCode::invalid_argument, "scan needs resolution >= 2, eps > 0");
    ScanResult out;
    out.resolution = resolution;
    out.eps = eps;
    out.min_value = std::numeric_limits<double>::infinity();
    for (int i = 0; i < resolution; ++i) {
        const double s = std::exp(std::log(s_max) * i / (resolution - 1));
        const double t_hi = 1.0 / s - eps;
        for (int j = 0; j < resolution; ++j) {
            const double t = eps + (t_hi - eps) * j / (resolution - 1);
            const double v = Fcal(s, t);
            ++out.samples;
            if (v < out.min_value) {
                out.min_value = v;
                out.arg1 = s;
                out.arg2 = t;
            }
        }
    }
    return out;
}

std::vector<SignPattern> Fcal_slope_scan(const std::vector<double>& ts, int resolution) {
    std::vector<SignPattern> out;
    for (double t : ts) {
        SignPattern sp;
        sp.t = t;
        char last = 0;
        for (int i = 1; i <= resolution; ++i) {
            const double s = static_cast<double>(i) / (resolution + 1);
            const double d = std::min(1e-6, 0.5 * s);
            const double deriv = (Fcal(s + d, t) - Fcal(s - d, t)) / (2 * d);
            if (std::abs(deriv) <= 1e-9 * std::abs(Fcal(s, t))) continue;
            const char sign = deriv > 0 ? '+' : '-';
            if (sign != last) {
                if (last) ++sp.sign_changes;
                sp.pattern += sign;
                last = sign;
            }
        }
        sp.ok = !sp.pattern.empty() && sp.pattern[0] == '+' && sp.sign_changes <= 1;
        out.push_back(sp);
    }
    return out;
}

namespace {

IdentityVerdict compare(std::string name, IntPolynomial lhs, IntPolynomial rhs) {
    IdentityVerdict v;
    v.name = std::move(name);
    const int n = std::max(lhs.degree(), rhs.degree());
    for (int k = 0; k <= n; ++k) {
        if (lhs[k] != rhs[k]) {
            v.mismatch_index = k;
            break;
        }
    }
    v.pass = v.mismatch_index < 0;
    v.lhs = std::move(lhs);
    v.rhs = std::move(rhs);
    return v;
}

}  // namespace

IdentityVerdict positivity_identity() {
    const IntPolynomial x = IntPolynomial::x();
    const IntPolynomial one{1};
    const IntPolynomial omx = one - x;
    const IntPolynomial lhs = pow(one + x, 4) * pow(one + x * x, 3) - 512 * pow(omx, 2) * pow(x, 4);
    const IntPolynomial rhs = pow(omx, 10) + 14 * x * pow(omx, 8) + 76 * pow(x, 2) * pow(omx, 6) +
                              72 * pow(x, 3) * pow(omx, 4) + 128 * pow(x, 3) * pow(one - 2 * x, 2);
    return compare("positivity identity", lhs, rhs);
}

IntPolynomial discriminant_c0() {
    const IntPolynomial x = IntPolynomial::x();
    return pow(x + IntPolynomial{1}, 3) - 2 * pow(x, 3);
}

IntPolynomial discriminant_c1() {
    const IntPolynomial x = IntPolynomial::x();
    return -2 * x * (IntPolynomial{1} - x);
}

IntPolynomial discriminant_c2() {
    const IntPolynomial x = IntPolynomial::x();
    return IntPolynomial{2} - pow(x + IntPolynomial{1}, 3);
}

IdentityVerdict discriminant_identity() {
    const IntPolynomial x = IntPolynomial::x();
    const IntPolynomial one{1};
    const IntPolynomial lhs = 4 * discriminant_c0() * discriminant_c2() - discriminant_c1() * discriminant_c1();
    const IntPolynomial rhs = 4 * pow(x + one, 2) * (pow(x * x - x + one, 2) - 10 * x * x);
    return compare("discriminant identity", lhs, rhs);
}

SampledIdentity sqrt10_identity_sampled(int samples) {
    SampledIdentity out;
    out.samples = samples;
    const double r10 = std::sqrt(10.0);
    const IntPolynomial c0 = discriminant_c0(), c1 = discriminant_c1(), c2 = discriminant_c2();
    for (int k = 1; k <= samples; ++k) {
        const double x = static_cast<double>(k) / 16.0;  // exact binary rationals in (0, 4]
        const double lhs = 4.0 * c0(x) * c2(x) - c1(x) * c1(x);
        const double rhs = 4.0 * (x + 1) * (x + 1) * (x * x + 1 + (r10 - 1) * x) * (x * x + 1 - (r10 + 1) * x);
        out.max_error = std::max(out.max_error, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
    out.pass = out.max_error <= 1e-12;
    return out;
}

ThresholdCheck golden_threshold() {
    ThresholdCheck c;
    c.lhs = 2.0 * std::cos(pi / 5);
    c.rhs = 2.0 * j01() / pi;
    c.holds = c.lhs > c.rhs;
    return c;
}

double cone_bound(double alpha, double area) {
    if (!(alpha > 0.0 && alpha < 2 * pi) || !(area > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "cone bound needs 0 < alpha < 2 pi and positive area");
    }
    const double j = j01();
    return 0.5 * alpha * j * j / area;
}

double mu2_diameter_bound(double diam) {
    const double r = 2.0 * j01() / diam;
    return r * r;
}

double bisector_dirichlet_bound(double max_distance) {
    const double r = j01() / max_distance;
    return r * r;
}

double altitude_bound(double pz2, double angle_z2) {
    const double r = (pi / 2) / (pz2 * std::sin(angle_z2));
    return r * r;
}

double altitude_j01_bound(double z3z2, double angle_z2) {
    const double r = (j01() + pi / 2) / (z3z2 * std::sin(angle_z2));
    return r * r;
}

}  // namespace hotspots
