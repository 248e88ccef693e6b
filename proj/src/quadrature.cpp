#include "convrest/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "convrest/errors.hpp"

namespace convrest {

static GaussRule make_rule(int n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double eps = 1e-15;
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev initial guess, then Newton on the Legendre recurrence.
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double z1, pp;
        do {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            z1 = z;
            z = z1 - p1 / pp;
        } while (std::fabs(z - z1) > eps);
        r.nodes[i] = -z;
        r.nodes[n - 1 - i] = z;
        r.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        r.weights[n - 1 - i] = r.weights[i];
    }
    return r;
}

const GaussRule& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
    return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n) {
    const GaussRule& r = gauss_legendre(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
    return s * half;
}

double integrate_composite(const std::function<double(double)>& f, double a, double b,
                           int panels, int n) {
    double s = 0.0;
    double w = (b - a) / panels;
    for (int k = 0; k < panels; ++k) s += integrate_gl(f, a + k * w, a + (k + 1) * w, n);
    return s;
}

double integrate_sqrt_singular(const std::function<double(double)>& f, double a, double b,
                               int n) {
    if (!(b > a)) throw std::invalid_argument("integrate_sqrt_singular: need b > a");
    // u = a + (b-a) sin^2(w) turns the weight into the constant 2 dw.
    auto g = [&](double w) {
        double s = std::sin(w);
        double u = a + (b - a) * s * s;
        u = std::min(std::max(u, std::nextafter(a, b)), std::nextafter(b, a));
        return 2.0 * f(u);
    };
    return integrate_gl(g, 0.0, 0.5 * kPi, n);
}

double integrate_tensor2(const std::function<double(double, double)>& f,
                         double ax, double bx, double ay, double by,
                         int panels, int n) {
    auto outer = [&](double y) {
        auto inner = [&](double x) { return f(x, y); };
        return integrate_composite(inner, ax, bx, panels, n);
    };
    return integrate_composite(outer, ay, by, panels, n);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rtol, double atol, int n, int max_panels) {
    double prev = integrate_composite(f, a, b, 1, n);
    for (int panels = 2; panels <= max_panels; panels *= 2) {
        double cur = integrate_composite(f, a, b, panels, n);
        if (std::fabs(cur - prev) <= atol + rtol * std::fabs(cur)) return cur;
        prev = cur;
    }
    throw QuadratureFailure("integrate_adaptive: no convergence after panel refinement");
}

}  // namespace convrest
