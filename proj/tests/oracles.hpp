// Independent oracles used by the tests. Everything here is computed from
// first principles (series, closed forms, brute-force quadrature) without
// touching the library's code paths.
#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

inline constexpr double pi = 3.14159265358979323846;

// Bessel J0: long-double power series below 12, Hankel expansion beyond.
double bessel_j0(double x);

// Adaptive Simpson on [a, b].
double quad1(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

// Tensor adaptive Simpson over a rectangle.
double quad2(const std::function<double(double, double)>& f, double ax, double bx, double ay,
             double by, double tol = 1e-10);

// Perimeter of the regular n-gon inscribed in a circle of radius r.
inline double inscribed_polygon_perimeter(int n, double r) { return 2.0 * n * r * std::sin(pi / n); }

// Chord and sagitta of a circular arc of opening angle phi.
inline double chord(double r, double phi) { return 2.0 * r * std::sin(0.5 * phi); }
inline double sagitta(double r, double phi) { return r * (1.0 - std::cos(0.5 * phi)); }

// Exact double integral of sin(s - t) over {0 < t < s < phi}.
inline double circle_sumset(double phi) { return phi - std::sin(phi); }

// Affine arclength of a circular arc: kappa = 1/r over arclength r * phi.
inline double circle_nu(double r, double phi) { return phi * std::pow(r, 2.0 / 3.0); }

// Ellipse perimeter by adaptive quadrature of the speed integrand.
double ellipse_perimeter(double a, double b, double tol = 1e-12);

// Least-squares slope of y against x.
double regression_slope(const std::vector<std::pair<double, double>>& xy);

// Graph curvature of y = x^2/2 at abscissa x.
inline double parabola_curvature(double x) { return std::pow(1.0 + x * x, -1.5); }

}  // namespace oracle
