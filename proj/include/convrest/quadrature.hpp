// Gauss-Legendre rules and the composite/tensor integrators built on them.
#pragma once

#include <functional>
#include <vector>

#include "convrest/geometry.hpp"

namespace convrest {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;  // sum to 2
};

// Nodes and weights of the n-point Gauss-Legendre rule (Newton on P_n).
// Results are cached per n and deterministic.
const GaussRule& gauss_legendre(int n);

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n = 32);

// Composite rule: `panels` equal subintervals, n-point rule on each.
double integrate_composite(const std::function<double(double)>& f, double a, double b,
                           int panels, int n = 16);

// Integral of f(u) / sqrt((b - u)(u - a)) over (a, b). The endpoint
// singularity is removed by the substitution u = a + (b - a) sin^2(w).
double integrate_sqrt_singular(const std::function<double(double)>& f, double a, double b,
                               int n = 64);

// Tensor product rule over [ax, bx] x [ay, by] with `panels` panels per axis.
double integrate_tensor2(const std::function<double(double, double)>& f,
                         double ax, double bx, double ay, double by,
                         int panels, int n = 16);

// Adaptive 1D integration by panel doubling until two successive composite
// evaluations agree within tolerances. Throws QuadratureFailure otherwise.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rtol = 1e-10, double atol = 1e-12, int n = 16,
                          int max_panels = 4096);

}  // namespace convrest
