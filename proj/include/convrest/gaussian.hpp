// Gaussian test functions with closed-form Fourier transforms and Lp norms.
#pragma once

#include <complex>
#include <string>

#include "convrest/geometry.hpp"

namespace convrest {

// f(x) = amplitude * exp(-pi (x-c)^T Q (x-c)) * exp(2 pi i m.x), Q SPD.
// Shifts only modulate the transform's phase; modulation shifts its center.
struct GaussianWave {
    std::string name = "gaussian";
    Vec2 center{0.0, 0.0};
    SymMat2 inv_cov = SymMat2::isotropic(1.0);
    Vec2 modulation{0.0, 0.0};
    double amplitude = 1.0;

    void validate() const;

    std::complex<double> value(const Vec2& x) const;
    // Closed-form transform with the e^{-2 pi i x.xi} convention:
    // fhat(xi) = A det(Q)^{-1/2} exp(-pi (xi-m)^T Q^{-1} (xi-m)) e^{-2 pi i c.(xi-m)}.
    std::complex<double> fourier(const Vec2& xi) const;
    double fourier_abs(const Vec2& xi) const;

    // ||f||_p = A p^{-1/p} det(Q)^{-1/(2p)}; p = inf gives A.
    double lp_norm(double p) const;

    // Companion function under the curve transform x -> V x: the function
    // g(x) = f(V^T x), whose transform satisfies ghat(V u) = fhat(u) when
    // |det V| = 1. Parameters map as Q -> V Q V^T, c -> V^{-T} c, m -> V m.
    GaussianWave companion_under(const Mat2& v) const;
};

}  // namespace convrest
