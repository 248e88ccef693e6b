#include "convrest/gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace convrest {

void GaussianWave::validate() const {
    if (!inv_cov.positive_definite())
        throw std::invalid_argument("GaussianWave: inverse covariance must be SPD");
    if (!(amplitude > 0.0)) throw std::invalid_argument("GaussianWave: amplitude must be > 0");
}

std::complex<double> GaussianWave::value(const Vec2& x) const {
    Vec2 r = x - center;
    double mag = amplitude * std::exp(-kPi * inv_cov.quad(r));
    return std::polar(mag, kTwoPi * dot(modulation, x));
}

std::complex<double> GaussianWave::fourier(const Vec2& xi) const {
    Vec2 w = xi - modulation;
    double mag = amplitude / std::sqrt(inv_cov.det()) * std::exp(-kPi * inv_cov.inverse().quad(w));
    return std::polar(mag, -kTwoPi * dot(center, w));
}

double GaussianWave::fourier_abs(const Vec2& xi) const {
    Vec2 w = xi - modulation;
    return amplitude / std::sqrt(inv_cov.det()) * std::exp(-kPi * inv_cov.inverse().quad(w));
}

double GaussianWave::lp_norm(double p) const {
    if (std::isinf(p)) return amplitude;
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    return amplitude * std::pow(p, -1.0 / p) * std::pow(inv_cov.det(), -0.5 / p);
}

GaussianWave GaussianWave::companion_under(const Mat2& v) const {
    GaussianWave g = *this;
    g.inv_cov = inv_cov.congruence(v);
    g.center = v.inverse().transpose().apply(center);
    g.modulation = v.apply(modulation);
    g.name = name + "@sheared";
    return g;
}

}  // namespace convrest
