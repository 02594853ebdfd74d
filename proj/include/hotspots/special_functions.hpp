#pragma once

namespace hotspots {

// Bessel function of the first kind, order zero. Power series for |x| <= 8,
// Hankel asymptotic form with rational P/Q fits beyond.
double j0(double x);
// Order one, power series; intended for |x| <= 8.
double j1_series(double x);
// First positive zero of J0, bisection on [2, 3] then Newton.
double j01();

}  // namespace hotspots
