#include "hotspots/special_functions.hpp"

#include <cmath>
#include <numbers>

namespace hotspots {

namespace {

// sum_k (-1)^k (x^2/4)^k / (k!)^2, accumulated in long double; terms peak
// near 1e2 at x = 8 so about two digits of headroom are lost.
long double j0_series(long double x) {
    const long double q = x * x / 4.0L;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (static_cast<long double>(k) * k);
        sum += term;
        if (std::fabs(term) < 1e-22L * std::fabs(sum) && std::fabs(term) < 1e-22L) break;
    }
    return sum;
}

double rational(const double* p, const double* q, int n, double y) {
    double num = 0.0, den = 0.0;
    for (int i = n - 1; i >= 0; --i) {
        num = num * y + p[i];
        den = den * y + q[i];
    }
    return num / den;
}

// Hart's fits for the Hankel P0, Q0 factors, ascending powers of (8/x)^2.
constexpr double kPC[] = {2.2779090197304684302e+04, 4.1345386639580765797e+04, 2.1170523380864944322e+04,
                          3.4806486443249270347e+03, 1.5376201909008354296e+02, 8.8961548424210455236e-01};
constexpr double kQC[] = {2.2779090197304684318e+04, 4.1370412495510416640e+04, 2.1215350561880115730e+04,
                          3.5028735138235608207e+03, 1.5711159858080893649e+02, 1.0};
constexpr double kPS[] = {-8.9226600200800094098e+01, -1.8591953644342993800e+02, -1.1183429920482737611e+02,
                          -2.2300261666214198472e+01, -1.2441026745835638459e+00, -8.8033303048680751817e-03};
constexpr double kQS[] = {5.7105024128512061905e+03, 1.1951131543434613647e+04, 7.2642780169211018836e+03,
                          1.4887231232283756582e+03, 9.0593769594993125859e+01, 1.0};

}  // namespace

double j0(double x) {
    x = std::fabs(x);
    if (x <= 8.0) return static_cast<double>(j0_series(x));
    const double y = 8.0 / x;
    const double y2 = y * y;
    const double z = x - 0.25 * std::numbers::pi;
    const double rc = rational(kPC, kQC, 6, y2);
    const double rs = rational(kPS, kQS, 6, y2);
    return std::sqrt(2.0 / (x * std::numbers::pi)) * (rc * std::cos(z) - y * rs * std::sin(z));
}

double j1_series(double x) {
    const long double h = static_cast<long double>(x) / 2.0L;
    const long double q = h * h;
    long double term = h;
    long double sum = h;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (static_cast<long double>(k) * (k + 1));
        sum += term;
        if (std::fabs(term) < 1e-22L) break;
    }
    return static_cast<double>(sum);
}

double j01() {
    double lo = 2.0, hi = 3.0;
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (j0(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 3; ++i) x += j0(x) / j1_series(x);  // J0' = -J1
    return x;
}

}  // namespace hotspots
