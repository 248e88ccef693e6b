#include "convrest/restriction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "convrest/quadrature.hpp"

namespace convrest {

namespace {

double sinc(double u) {
    if (std::fabs(u) < 1e-8) {
        double v = kPi * u;
        return 1.0 - v * v / 6.0;
    }
    return std::sin(kPi * u) / (kPi * u);
}

// nu-density weight at a node: kappa^{1/3}, zero on corner atoms.
double nu_weight(const ArclengthChart& chart, std::size_t i) {
    return chart.node_corner(i) ? 0.0 : std::cbrt(chart.node_kappa(i));
}

Vec2 tangent_at_checked(const ArclengthChart& chart, double t) {
    std::size_t idx;
    if (chart.at_node(t, &idx)) {
        if (chart.node_corner(idx))
            throw SingularPoint("tangent requested at a corner node");
        return chart.node_tangent_r(idx);
    }
    TangentPair tp = chart.tangents_at(t);
    return unit_from_angle(tp.theta_r);
}

}  // namespace

Multiplier Multiplier::conjugate_phase(const GaussianWave& f) {
    Multiplier m;
    m.kind = Kind::ConjugatePhase;
    m.phase_source = f;
    return m;
}

std::complex<double> Multiplier::operator()(const Vec2& w) const {
    switch (kind) {
        case Kind::Unit:
            return {1.0, 0.0};
        case Kind::ConjugatePhase: {
            std::complex<double> v = phase_source->fourier(w);
            double a = std::abs(v);
            if (a <= 0.0) return {1.0, 0.0};
            return std::conj(v) / a;
        }
        case Kind::Grid: {
            if (nx < 2 || ny < 2) return {1.0, 0.0};
            double fx = std::clamp((w.x - x0) / dx, 0.0, double(nx - 1) - 1e-12);
            double fy = std::clamp((w.y - y0) / dy, 0.0, double(ny - 1) - 1e-12);
            int ix = static_cast<int>(fx), iy = static_cast<int>(fy);
            double ax = fx - ix, ay = fy - iy;
            auto at = [&](int i, int j) { return samples[std::size_t(j) * nx + i]; };
            std::complex<double> v = at(ix, iy) * ((1 - ax) * (1 - ay)) +
                                     at(ix + 1, iy) * (ax * (1 - ay)) +
                                     at(ix, iy + 1) * ((1 - ax) * ay) +
                                     at(ix + 1, iy + 1) * (ax * ay);
            double a = std::abs(v);
            if (a > 1.0) v /= a;  // keep |g| <= 1 after interpolation
            return v;
        }
    }
    return {1.0, 0.0};
}

std::complex<double> BumpWeight::transform(const Vec2& xi) const {
    if (g.kind != Multiplier::Kind::Unit)
        throw std::invalid_argument("bump transform is closed-form only for the unit multiplier");
    return {sinc(2.0 * r1 * xi.x) * sinc(2.0 * r2 * xi.y), 0.0};
}

ExtensionResult extension(const ArclengthChart& chart,
                          const std::vector<std::complex<double>>& coeffs,
                          const std::vector<Vec2>& xis, const BumpWeight* bump) {
    const std::size_t n = chart.node_count();
    if (coeffs.size() != n && coeffs.size() != n + 1)
        throw std::invalid_argument("extension: coefficients must be sampled at the chart nodes");

    // Phase resolution only matters where the nu weight is nonzero.
    double max_cell = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (nu_weight(chart, i) == 0.0 && nu_weight(chart, i + 1) == 0.0) continue;
        max_cell = std::max(max_cell, chart.node_param(i + 1) - chart.node_param(i));
    }

    ExtensionResult res;
    res.values.reserve(xis.size());
    for (const Vec2& xi : xis) {
        double ratio = norm(xi) * max_cell;
        if (ratio > 0.5) {
            std::ostringstream os;
            os << "|xi| * node spacing = " << ratio << " > 0.5: phase is unresolved";
            throw UnderResolved(os.str());
        }
        if (ratio > 0.1) res.under_resolved = true;

        std::complex<double> amp =
            bump ? bump->transform(xi) : std::complex<double>{1.0, 0.0};
        auto term = [&](std::size_t i) {
            std::complex<double> f = (i < coeffs.size()) ? coeffs[i] : coeffs[0];  // wrap
            double w = nu_weight(chart, i);
            double phase = kTwoPi * dot(xi, chart.node_point(i));
            return f * std::polar(w, phase);
        };
        std::complex<double> acc{0.0, 0.0};
        std::complex<double> prev = term(0);
        for (std::size_t i = 0; i < n; ++i) {
            std::complex<double> next = term(i + 1);
            double dt = chart.node_param(i + 1) - chart.node_param(i);
            acc += 0.5 * dt * (prev + next);
            prev = next;
        }
        res.values.push_back(amp * acc);
    }
    return res;
}

namespace {

using FieldFn = std::function<std::complex<double>(const Vec2&)>;

std::complex<double> tensor_average(const FieldFn& field, const Vec2& x, double r1, double r2,
                                    int panels_x, int panels_y, int n) {
    const GaussRule& rule = gauss_legendre(n);
    std::complex<double> acc{0.0, 0.0};
    double wx = 2.0 * r1 / panels_x;
    double wy = 2.0 * r2 / panels_y;
    for (int px = 0; px < panels_x; ++px) {
        double cx = x.x - r1 + (px + 0.5) * wx;
        for (int py = 0; py < panels_y; ++py) {
            double cy = x.y - r2 + (py + 0.5) * wy;
            for (int i = 0; i < n; ++i) {
                double u = cx + 0.5 * wx * rule.nodes[i];
                for (int j = 0; j < n; ++j) {
                    double v = cy + 0.5 * wy * rule.nodes[j];
                    acc += rule.weights[i] * rule.weights[j] * field({u, v});
                }
            }
        }
    }
    acc *= 0.25 * wx * wy;  // GL weights sum to 2 per axis
    return acc / (4.0 * r1 * r2);
}

std::complex<double> refine_average(const FieldFn& field, const Vec2& x, double r1, double r2,
                                    double osc_freq, const QuadControl& qc) {
    if (!(r1 > 0.0) || !(r2 > 0.0))
        throw std::invalid_argument("rect_average: half-widths must be positive");
    double target = std::min(1.0, 1.5 / (1.0 + 2.0 * osc_freq));
    int px = std::max(1, static_cast<int>(std::ceil(2.0 * r1 / target)));
    int py = std::max(1, static_cast<int>(std::ceil(2.0 * r2 / target)));

    std::complex<double> prev = tensor_average(field, x, r1, r2, px, py, qc.nodes);
    for (int k = 0; k < qc.max_refine; ++k) {
        px *= 2;
        py *= 2;
        std::complex<double> cur = tensor_average(field, x, r1, r2, px, py, qc.nodes);
        if (std::abs(cur - prev) <= qc.atol + qc.rtol * std::abs(cur)) return cur;
        prev = cur;
    }
    throw QuadratureFailure("rect_average: refinement did not converge");
}

}  // namespace

std::complex<double> rect_average(const GaussianWave& tf, const Multiplier& g, const Vec2& x,
                                  double r1, double r2, const QuadControl& qc) {
    // Panel budget: resolve the transform's phase oscillation (rate |center|
    // cycles per unit) on top of its decay scale.
    double freq = norm(tf.center) + norm(tf.modulation);
    auto field = [&](const Vec2& w) { return tf.fourier(w) * g(w); };
    return refine_average(field, x, r1, r2, freq, qc);
}

std::complex<double> rect_average_field(const FieldFn& field, const Vec2& x, double r1,
                                        double r2, const QuadControl& qc) {
    return refine_average(field, x, r1, r2, 0.0, qc);
}

MaximalResult maximal_average(const GaussianWave& tf, const Multiplier& g, const Vec2& x,
                              const RectFamily& family, const QuadControl& qc) {
    if (family.j_min > family.j_max)
        throw std::invalid_argument("maximal_average: empty rectangle family");
    MaximalResult best;
    int bj1 = family.j_min, bj2 = family.j_min;
    for (int j1 = family.j_min; j1 <= family.j_max; ++j1) {
        double r1 = std::exp2(-j1);
        for (int j2 = family.j_min; j2 <= family.j_max; ++j2) {
            double r2 = std::exp2(-j2);
            double v = std::abs(rect_average(tf, g, x, r1, r2, qc));
            if (v > best.value) {
                best.value = v;
                best.r1 = r1;
                best.r2 = r2;
                bj1 = j1;
                bj2 = j2;
            }
        }
    }
    best.attained_on_boundary = bj1 == family.j_min || bj1 == family.j_max ||
                                bj2 == family.j_min || bj2 == family.j_max;
    return best;
}

double restriction_q(double p) {
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    return p / (p - 1.0) / 3.0;
}

NormRatioRow norm_ratio(const ArclengthChart& chart, const GaussianWave& tf, double p,
                        bool maximal, const Multiplier& g, const RectFamily& family,
                        const QuadControl& qc) {
    if (!(p >= 1.0) || p >= 4.0 / 3.0) {
        std::ostringstream os;
        os << "p = " << p << " outside [1, 4/3): the uniform restriction estimate "
           << "holds only strictly below 4/3";
        throw ExponentOutOfRange(os.str());
    }
    tf.validate();
    NormRatioRow row;
    row.tf_id = tf.name;
    row.p = p;
    row.q = restriction_q(p);
    row.maximal = maximal;

    const std::size_t n = chart.node_count();
    std::vector<double> F(n + 1, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
        if (nu_weight(chart, i) == 0.0) continue;  // nu-null nodes never contribute
        const Vec2& z = chart.node_point(i);
        F[i] = maximal ? maximal_average(tf, g, z, family, qc).value : tf.fourier_abs(z);
    }

    if (std::isinf(row.q)) {
        double m = 0.0;
        for (std::size_t i = 0; i <= n; ++i)
            if (nu_weight(chart, i) > 0.0) m = std::max(m, F[i]);
        row.numerator = m;
    } else {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double ga = std::pow(F[i], row.q) * nu_weight(chart, i);
            double gb = std::pow(F[i + 1], row.q) * nu_weight(chart, i + 1);
            acc += 0.5 * (ga + gb) * (chart.node_param(i + 1) - chart.node_param(i));
        }
        row.numerator = std::pow(acc, 1.0 / row.q);
    }
    row.denominator = tf.lp_norm(p);
    row.ratio = row.numerator / row.denominator;
    return row;
}

double cs_jacobian(const ArclengthChart& chart, double s, double t) {
    Vec2 us = tangent_at_checked(chart, s);
    Vec2 ut = tangent_at_checked(chart, t);
    double det = cross(us, ut);
    double ref = std::sin(chart.turning_r(t) - chart.turning_r(s));
    if (std::fabs(det - ref) > 1e-9) {
        std::ostringstream os;
        os << "Jacobian identity violated: det = " << det << ", sin(dtheta) = " << ref;
        throw std::logic_error(os.str());
    }
    return det;
}

RegionCheck region_split(const ArclengthChart& chart, double s, double t) {
    if (!(t < s)) throw ParameterOutOfRange("region_split: need t < s in the lower triangle");
    // Corner guard (the tangent angle must be single-valued at both points).
    (void)tangent_at_checked(chart, s);
    (void)tangent_at_checked(chart, t);
    double dtheta = chart.turning_r(s) - chart.turning_r(t);
    RegionCheck rc;
    rc.angle = dtheta;
    int j = 1 + static_cast<int>(std::floor(dtheta / (0.5 * kPi)));
    rc.region = std::clamp(j, 1, 4);
    switch (rc.region) {
        case 1:
            rc.sin_value = std::sin(dtheta);
            rc.bound = 0.5 * dtheta;
            break;
        case 2:
            rc.sin_value = std::sin(dtheta);
            rc.bound = 0.5 * (kPi - dtheta);
            break;
        case 3:
            rc.sin_value = std::sin(-dtheta);
            rc.bound = 0.5 * (dtheta - kPi);
            break;
        default:
            rc.sin_value = std::sin(-dtheta);
            rc.bound = 0.5 * (kTwoPi - dtheta);
            break;
    }
    return rc;
}

LebesgueProbe lebesgue_point_probe(const ArclengthChart& chart, const GaussianWave& tf,
                                   double t, const std::vector<double>& scales,
                                   const QuadControl& qc) {
    chart.check_param(t);
    LebesgueProbe probe;
    probe.t = t;
    Vec2 z = chart.point_at(t);
    std::complex<double> ref = tf.fourier(z);
    probe.fhat_abs = std::abs(ref);

    Multiplier unit = Multiplier::unit();
    for (double s : scales) {
        std::complex<double> avg = rect_average(tf, unit, z, s, s, qc);
        ProbeRow row;
        row.scale = s;
        row.average_abs = std::abs(avg);
        row.error = std::abs(avg - ref);
        probe.rows.push_back(row);
    }
    std::sort(probe.rows.begin(), probe.rows.end(),
              [](const ProbeRow& a, const ProbeRow& b) { return a.scale > b.scale; });

    double floor_err = 1e-13 * std::max(1.0, probe.fhat_abs);
    probe.exact = std::all_of(probe.rows.begin(), probe.rows.end(),
                              [&](const ProbeRow& r) { return r.error <= floor_err; });
    // log-log regression over rows above the rounding floor
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const ProbeRow& r : probe.rows) {
        if (r.error <= floor_err) continue;
        double lx = std::log(r.scale), ly = std::log(r.error);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    probe.loglog_slope = (m >= 2) ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : 0.0;
    return probe;
}

}  // namespace convrest
