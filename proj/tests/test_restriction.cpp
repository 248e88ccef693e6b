#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "convrest/families.hpp"
#include "convrest/measure.hpp"
#include "convrest/restriction.hpp"
#include "oracles.hpp"

using namespace convrest;

namespace {

std::vector<std::complex<double>> ones(const ArclengthChart& chart) {
    return std::vector<std::complex<double>>(chart.node_count(), {1.0, 0.0});
}

}  // namespace

TEST_CASE("extension of f = 1 on the circle is the Bessel closed form") {
    ArclengthChart chart = ArclengthChart::build(make_circle(1.0, 1 << 12));
    std::vector<Vec2> xis;
    for (double r : {0.0, 0.5, 1.0, 2.0, 4.0}) xis.push_back({r, 0.0});
    xis.push_back({3.0 / std::sqrt(2.0), 3.0 / std::sqrt(2.0)});  // rotation invariance
    ExtensionResult res = extension(chart, ones(chart), xis);
    for (std::size_t i = 0; i < xis.size(); ++i) {
        double expect = 2.0 * oracle::pi * oracle::bessel_j0(2.0 * oracle::pi * norm(xis[i]));
        CHECK(std::abs(res.values[i] - expect) <= 1e-5);
    }
}

TEST_CASE("extension is linear and vanishes on zero data and null measures") {
    ArclengthChart chart = ArclengthChart::build(make_circle(1.0, 2048));
    std::vector<std::complex<double>> zero(chart.node_count(), {0.0, 0.0});
    ExtensionResult res = extension(chart, zero, {Vec2{0.3, 0.4}});
    CHECK(std::abs(res.values[0]) == 0.0);

    ArclengthChart gon = ArclengthChart::build(make_regular_ngon(64, 1.0));
    ExtensionResult pres = extension(gon, ones(gon), {Vec2{0.0, 0.0}, Vec2{1.0, 2.0}});
    CHECK(std::abs(pres.values[0]) == 0.0);
    CHECK(std::abs(pres.values[1]) == 0.0);
}

TEST_CASE("extension agrees with itself under refinement") {
    ArclengthChart coarse = ArclengthChart::build(make_circle(1.0, 1 << 12));
    ArclengthChart fine = ArclengthChart::build(make_circle(1.0, 1 << 13));
    for (double r : {1.0, 4.0, 8.0}) {
        Vec2 xi{r * 0.6, -r * 0.8};
        std::complex<double> a = extension(coarse, ones(coarse), {xi}).values[0];
        std::complex<double> b = extension(fine, ones(fine), {xi}).values[0];
        CHECK(std::abs(a - b) <= 1e-6);
    }
}

TEST_CASE("under-resolved frequencies warn and then throw") {
    ArclengthChart chart = ArclengthChart::build(make_circle(1.0, 256));
    double spacing = chart.total_length() / 256.0;
    ExtensionResult warn = extension(chart, ones(chart), {Vec2{0.2 / spacing, 0.0}});
    CHECK(warn.under_resolved);
    CHECK_THROWS_AS(extension(chart, ones(chart), {Vec2{0.7 / spacing, 0.0}}), UnderResolved);
}

TEST_CASE("extension with a unit bump damps by the sinc transform") {
    ArclengthChart chart = ArclengthChart::build(make_circle(1.0, 2048));
    BumpWeight bump;
    bump.r1 = 0.5;
    bump.r2 = 0.25;
    Vec2 xi{1.0, 0.5};
    std::complex<double> plain = extension(chart, ones(chart), {xi}).values[0];
    std::complex<double> bumped = extension(chart, ones(chart), {xi}, &bump).values[0];
    std::complex<double> factor = bump.transform(xi);
    CHECK(std::abs(bumped - plain * factor) <= 1e-12);
    // the bump transform itself: separable sinc product with value 1 at 0
    CHECK(bump.transform({0.0, 0.0}).real() == doctest::Approx(1.0));
    double u = 2.0 * bump.r1 * xi.x;
    CHECK(bump.transform({xi.x, 0.0}).real() ==
          doctest::Approx(std::sin(oracle::pi * u) / (oracle::pi * u)).epsilon(1e-12));
}

TEST_CASE("rectangle averages of a constant multiplier reproduce erf products") {
    GaussianWave g;  // exp(-pi |x|^2), fhat = exp(-pi |xi|^2)
    Multiplier unit = Multiplier::unit();
    std::complex<double> avg = rect_average(g, unit, {0.0, 0.0}, 1.0, 1.0);
    double one_axis = std::erf(std::sqrt(oracle::pi)) / 2.0;  // (1/2) int_{-1}^{1} e^{-pi u^2}
    CHECK(avg.real() == doctest::Approx(one_axis * one_axis).epsilon(1e-10));
    CHECK(std::abs(avg.imag()) <= 1e-12);
}

TEST_CASE("tiny rectangles converge to the point value") {
    GaussianWave g;
    g.center = {0.3, 0.0};
    g.modulation = {0.2, -0.1};
    Multiplier unit = Multiplier::unit();
    Vec2 x{0.4, -0.2};
    std::complex<double> ref = g.fourier(x);
    double prev = 1e9;
    for (double r : {0.25, 0.0625, 0.015625, 0.00390625}) {
        double err = std::abs(rect_average(g, unit, x, r, r) - ref);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev <= 1e-4);
}

TEST_CASE("maximal average dominates every member average") {
    GaussianWave g;
    g.inv_cov = SymMat2::isotropic(4.0);
    Multiplier unit = Multiplier::unit();
    Vec2 x{0.5, 0.3};
    RectFamily fam{-2, 6};
    MaximalResult m = maximal_average(g, unit, x, fam);
    for (int j1 = fam.j_min; j1 <= fam.j_max; j1 += 2)
        for (int j2 = fam.j_min; j2 <= fam.j_max; j2 += 3) {
            double v = std::abs(rect_average(g, unit, x, std::exp2(-j1), std::exp2(-j2)));
            CHECK(m.value >= v - 1e-12);
        }
    // reported maximizer is a member of the family
    CHECK(m.r1 > 0.0);
    CHECK(m.r2 > 0.0);
}

TEST_CASE("with the conjugate-phase multiplier the maximal average dominates |fhat|") {
    GaussianWave g;
    g.center = {0.4, -0.1};
    g.modulation = {0.3, 0.2};
    Multiplier conj = Multiplier::conjugate_phase(g);
    for (Vec2 x : {Vec2{1.0, 0.0}, Vec2{0.0, 1.0}}) {
        MaximalResult m = maximal_average(g, conj, x, {-2, 10});
        CHECK(m.value >= g.fourier_abs(x) - 1e-4);
    }
}

TEST_CASE("grid multipliers clamp to unit modulus and interpolate") {
    Multiplier grid;
    grid.kind = Multiplier::Kind::Grid;
    grid.nx = grid.ny = 3;
    grid.x0 = grid.y0 = -1.0;
    grid.dx = grid.dy = 1.0;
    grid.samples.assign(9, {2.0, 0.0});  // modulus 2: must clamp to 1
    CHECK(std::abs(grid({0.2, 0.3})) == doctest::Approx(1.0));
    GaussianWave g;
    std::complex<double> a = rect_average(g, grid, {0.0, 0.0}, 0.5, 0.5);
    std::complex<double> b = rect_average(g, Multiplier::unit(), {0.0, 0.0}, 0.5, 0.5);
    CHECK(std::abs(a - b) <= 1e-10);
}

TEST_CASE("norm ratio enforces the exponent gate") {
    ArclengthChart chart = ArclengthChart::build(make_circle(1.0, 512));
    GaussianWave g;
    CHECK_THROWS_AS(norm_ratio(chart, g, 4.0 / 3.0), ExponentOutOfRange);
    CHECK_THROWS_AS(norm_ratio(chart, g, 1.5), ExponentOutOfRange);
    CHECK_THROWS_AS(norm_ratio(chart, g, 0.9), ExponentOutOfRange);
    CHECK(restriction_q(1.2) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::isinf(restriction_q(1.0)));
}

TEST_CASE("norm ratio vanishes on polygons") {
    ArclengthChart gon = ArclengthChart::build(make_regular_ngon(64, 1.0));
    GaussianWave g;
    NormRatioRow row = norm_ratio(gon, g, 1.2);
    CHECK(row.numerator == 0.0);
    CHECK(row.ratio == 0.0);
    CHECK(row.q == doctest::Approx(2.0));
}

TEST_CASE("circle norm ratio at p = 6/5 matches the brute-force oracle") {
    ArclengthChart chart = ArclengthChart::build(make_circle(1.0, 1 << 12));
    GaussianWave g;
    g.center = {0.2, -0.3};
    g.inv_cov = {1.1, 0.2, 0.9};
    NormRatioRow row = norm_ratio(chart, g, 1.2);
    // oracle: q = 2 numerator over the ideal circle with kappa = 1
    double det = g.inv_cov.det();
    SymMat2 qinv = g.inv_cov.inverse();
    auto integrand = [&](double a) {
        Vec2 z{std::cos(a), std::sin(a)};
        double mag = 1.0 / std::sqrt(det) * std::exp(-oracle::pi * qinv.quad(z));
        return mag * mag;
    };
    double num = std::sqrt(oracle::quad1(integrand, 0.0, 2.0 * oracle::pi));
    double den = std::pow(1.2, -1.0 / 1.2) * std::pow(det, -0.5 / 1.2);
    CHECK(row.ratio == doctest::Approx(num / den).epsilon(1e-4));
    CHECK(row.denominator == doctest::Approx(den).epsilon(1e-12));
}

TEST_CASE("norm ratios are stable under unimodular shear") {
    ConvexCurve circle = make_circle(1.0, 4096);
    Mat2 v = Mat2::shear_x(0.5);
    ArclengthChart base = ArclengthChart::build(circle);
    ArclengthChart image = ArclengthChart::build(circle.transformed(v));
    for (int k = 0; k < 3; ++k) {
        GaussianWave f;
        f.inv_cov = SymMat2::isotropic(6.0 + 3.0 * k);
        f.modulation = {0.2 * k, -0.1};
        double r0 = norm_ratio(base, f, 1.2).ratio;
        double r1 = norm_ratio(image, f.companion_under(v), 1.2).ratio;
        CHECK(std::fabs(r1 / r0 - 1.0) <= 0.05);
    }
}

TEST_CASE("maximal norm ratio dominates the plain one") {
    ArclengthChart chart = ArclengthChart::build(make_circle(1.0, 96));
    GaussianWave g;
    g.inv_cov = SymMat2::isotropic(6.0);
    RectFamily fam{0, 6};
    NormRatioRow plain = norm_ratio(chart, g, 1.2);
    NormRatioRow maximal = norm_ratio(chart, g, 1.2, true, Multiplier::conjugate_phase(g), fam);
    CHECK(maximal.maximal);
    CHECK(maximal.numerator >= plain.numerator - 1e-3);
}

TEST_CASE("jacobian identity between tangent pairs") {
    ArclengthChart circle = ArclengthChart::build(make_circle(1.0, 1 << 12));
    // s = t gives zero
    CHECK(cs_jacobian(circle, 1.0, 1.0) == doctest::Approx(0.0));
    // orthogonal tangents give one
    double quarter = circle.total_length() * 0.25;
    CHECK(cs_jacobian(circle, 0.0, quarter) == doctest::Approx(1.0).epsilon(1e-6));

    ArclengthChart ell = ArclengthChart::build(make_ellipse(2.0, 1.0, 1 << 12));
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> uni(0.0, ell.total_length());
    for (int k = 0; k < 2000; ++k) {
        double s = uni(rng), t = uni(rng);
        double det = cs_jacobian(ell, s, t);
        double ref = std::sin(ell.turning_r(t) - ell.turning_r(s));
        CHECK(std::fabs(det - ref) <= 1e-9);
    }

    ArclengthChart sq = ArclengthChart::build(make_regular_ngon(4, 1.0));
    CHECK_THROWS_AS(cs_jacobian(sq, 0.0, 1.0), SingularPoint);
}

TEST_CASE("region split indices and sine bounds") {
    ArclengthChart circle = ArclengthChart::build(make_circle(1.0, 1 << 13));
    double L = circle.total_length();
    auto at_angle = [&](double ang) { return L * ang / (2.0 * oracle::pi); };

    RegionCheck r1 = region_split(circle, at_angle(0.3), 0.0);
    CHECK(r1.region == 1);
    CHECK(r1.sin_value >= 0.5 * r1.angle - 1e-9);
    CHECK(std::sin(0.3) >= 0.15);

    RegionCheck r2 = region_split(circle, at_angle(2.0), 0.0);
    CHECK(r2.region == 2);
    CHECK(r2.sin_value == doctest::Approx(std::sin(2.0)).epsilon(1e-6));
    CHECK(r2.bound == doctest::Approx(0.5 * (oracle::pi - 2.0)).epsilon(1e-6));
    CHECK(r2.slack() >= 0.0);

    RegionCheck r4 = region_split(circle, at_angle(1.5 * oracle::pi), 0.0);
    CHECK(r4.region == 4);  // half-open intervals put 3pi/2 in region 4

    CHECK_THROWS_AS(region_split(circle, 0.0, 1.0), ParameterOutOfRange);

    // the four bounds hold over random smooth pairs on several curves
    std::vector<ArclengthChart> charts;
    charts.push_back(ArclengthChart::build(make_ellipse(2.0, 1.0, 4096)));
    charts.push_back(ArclengthChart::build(make_superellipse(4.0, 1.0, 1.0, 4096)));
    charts.push_back(ArclengthChart::build(make_stadium(1.0, 2.0, 4096)));
    std::mt19937_64 rng(123);
    for (const ArclengthChart& chart : charts) {
        std::uniform_real_distribution<double> uni(0.0, chart.total_length());
        int done = 0;
        while (done < 3000) {
            double s = uni(rng), t = uni(rng);
            if (s == t) continue;
            if (t > s) std::swap(s, t);
            RegionCheck rc = region_split(chart, s, t);
            CHECK(rc.slack() >= -1e-12);
            CHECK(rc.bound >= -1e-12);
            ++done;
        }
    }
}

TEST_CASE("lebesgue probe converges with slope about two") {
    ArclengthChart circle = ArclengthChart::build(make_circle(1.0, 2048));
    GaussianWave g;
    g.inv_cov = SymMat2::isotropic(4.0);
    std::vector<double> scales;
    for (int k = 0; k <= 6; ++k) scales.push_back(std::exp2(-k));
    LebesgueProbe probe = lebesgue_point_probe(circle, g, 0.7, scales);
    CHECK_FALSE(probe.exact);
    CHECK(probe.loglog_slope >= 0.9);
    // errors are eventually decreasing
    for (std::size_t i = 2; i < probe.rows.size(); ++i)
        CHECK(probe.rows[i].error <= probe.rows[i - 1].error + 1e-12);
    CHECK(probe.rows.back().error <= 1e-2);

    // regression oracle agrees with the probe's own slope
    std::vector<std::pair<double, double>> pts;
    for (const ProbeRow& r : probe.rows)
        if (r.error > 1e-13) pts.emplace_back(std::log(r.scale), std::log(r.error));
    CHECK(probe.loglog_slope == doctest::Approx(oracle::regression_slope(pts)).epsilon(1e-12));

    // a modulated gaussian still converges, with a larger constant
    GaussianWave mod = g;
    mod.modulation = {1.0, 0.4};
    LebesgueProbe mprobe = lebesgue_point_probe(circle, mod, 0.7, scales);
    CHECK(mprobe.loglog_slope >= 0.9);
    CHECK(mprobe.rows.back().error <= 0.5);
}
