// Fourier extension over the curve, maximal rectangle averages, and the
// Carleson-Sjolin change-of-variables diagnostics.
#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "convrest/chart.hpp"
#include "convrest/gaussian.hpp"

namespace convrest {

// The unit-modulus multiplier g of the maximal operator. ConjugatePhase is
// the choice g = conj(fhat)/|fhat| that turns averages of fhat g into
// averages of |fhat|. Grid carries explicit samples on an axis-parallel
// lattice, evaluated bilinearly and clamped to |g| <= 1.
struct Multiplier {
    enum class Kind { Unit, ConjugatePhase, Grid };
    Kind kind = Kind::Unit;
    std::optional<GaussianWave> phase_source;  // for ConjugatePhase

    // Grid data: samples[iy * nx + ix] at (x0 + ix dx, y0 + iy dy).
    std::vector<std::complex<double>> samples;
    int nx = 0, ny = 0;
    double x0 = 0.0, y0 = 0.0, dx = 1.0, dy = 1.0;

    static Multiplier unit() { return {}; }
    static Multiplier conjugate_phase(const GaussianWave& f);

    std::complex<double> operator()(const Vec2& w) const;
};

// Bump weight |R|^{-1} 1_R(y) g(x - y) on the rectangle with half-widths
// (r1, r2) centred at the origin.
struct BumpWeight {
    double r1 = 1.0;
    double r2 = 1.0;
    Multiplier g;

    double area() const { return 4.0 * r1 * r2; }
    // Closed-form transform of the bump, available for the unit multiplier.
    std::complex<double> transform(const Vec2& xi) const;
};

struct ExtensionResult {
    std::vector<std::complex<double>> values;
    bool under_resolved = false;  // warning threshold crossed
};

// Oscillatory quadrature of int_J bumphat(xi) e^{2 pi i xi.z(t)} f(t) dnu(t).
// coeffs holds f at the chart nodes (wrap value implied). With no bump the
// plain extension operator is evaluated. Throws UnderResolved when the phase
// advances more than half a cycle per cell at some requested frequency.
ExtensionResult extension(const ArclengthChart& chart,
                          const std::vector<std::complex<double>>& coeffs,
                          const std::vector<Vec2>& xis,
                          const BumpWeight* bump = nullptr);

struct QuadControl {
    int nodes = 16;        // Gauss-Legendre points per panel per axis
    double rtol = 1e-9;
    double atol = 1e-12;
    int max_refine = 5;    // panel doublings before QuadratureFailure
};

// Average of fhat * g over the rectangle with half-widths (r1, r2) centred
// at x, by tensor Gauss-Legendre with refinement control.
std::complex<double> rect_average(const GaussianWave& tf, const Multiplier& g,
                                  const Vec2& x, double r1, double r2,
                                  const QuadControl& qc = {});

// Same average for an arbitrary field (used for constant-field probes).
std::complex<double> rect_average_field(
    const std::function<std::complex<double>(const Vec2&)>& field, const Vec2& x, double r1,
    double r2, const QuadControl& qc = {});

// Dyadic family of origin-centred axis-parallel rectangles with half-widths
// (2^{-j1}, 2^{-j2}).
struct RectFamily {
    int j_min = -2;
    int j_max = 12;
};

struct MaximalResult {
    double value = 0.0;
    double r1 = 0.0, r2 = 0.0;  // maximizing rectangle
    bool attained_on_boundary = false;
};

MaximalResult maximal_average(const GaussianWave& tf, const Multiplier& g, const Vec2& x,
                              const RectFamily& family = {}, const QuadControl& qc = {});

struct NormRatioRow {
    std::string curve_id;
    std::string tf_id;
    double p = 0.0;
    double q = 0.0;          // always p'/3
    double numerator = 0.0;  // L^q(Gamma, nu) norm of fhat or of M_g fhat
    double denominator = 0.0;  // closed-form ||f||_p
    double ratio = 0.0;
    bool maximal = false;
};

// Restriction-estimate ratio for 1 <= p < 4/3 (ExponentOutOfRange beyond).
// With maximal = true the numerator uses the maximal averages M_g fhat at
// every chart node; otherwise the pointwise |fhat|.
NormRatioRow norm_ratio(const ArclengthChart& chart, const GaussianWave& tf, double p,
                        bool maximal = false, const Multiplier& g = Multiplier::unit(),
                        const RectFamily& family = {}, const QuadControl& qc = {});

// Exponent on the curve side: q = p'/3 (infinity at p = 1).
double restriction_q(double p);

// det(z'(s), z'(t)) from the stored tangent vectors, checked against the
// identity det = sin(theta(t) - theta(s)) of the change of variables.
// Throws SingularPoint at corners.
double cs_jacobian(const ArclengthChart& chart, double s, double t);

struct RegionCheck {
    int region = 0;       // j in 1..4 by theta(s) - theta(t) in [(j-1)pi/2, j pi/2)
    double angle = 0.0;   // theta(s) - theta(t)
    double sin_value = 0.0;   // the sine the proof bounds from below
    double bound = 0.0;       // the linear lower bound for that region
    double slack() const { return sin_value - bound; }
};

// Region of the lower triangle (s > t) and the checked sine inequality.
RegionCheck region_split(const ArclengthChart& chart, double s, double t);

struct ProbeRow {
    double scale = 0.0;
    double average_abs = 0.0;
    double error = 0.0;  // | |average| - |fhat(z(t))| |
};

struct LebesgueProbe {
    double t = 0.0;
    double fhat_abs = 0.0;
    std::vector<ProbeRow> rows;  // one per scale, largest first
    bool exact = false;          // every error at rounding level
    double loglog_slope = 0.0;   // regression of log error vs log scale
};

// Shrinking square averages of fhat around z(t); scales are half-widths.
LebesgueProbe lebesgue_point_probe(const ArclengthChart& chart, const GaussianWave& tf,
                                   double t, const std::vector<double>& scales,
                                   const QuadControl& qc = {});

}  // namespace convrest
