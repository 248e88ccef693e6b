// Plane geometry primitives shared across the library.
#pragma once

#include <cmath>
#include <limits>

namespace convrest {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Relative tolerance for geometric predicates (convexity, containment,
// coincident points). Scaled by the curve diameter where it is used.
inline constexpr double kGeomTol = 1e-12;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double xx, double yy) : x(xx), y(yy) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm2(const Vec2& v) { return dot(v, v); }
inline double norm(const Vec2& v) { return std::sqrt(norm2(v)); }
inline double dist(const Vec2& a, const Vec2& b) { return norm(a - b); }
inline Vec2 normalized(const Vec2& v) { return v / norm(v); }
inline Vec2 perp(const Vec2& v) { return {-v.y, v.x}; }  // ccw quarter turn

inline Vec2 unit_from_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }

// Angle of a nonzero vector in [0, 2pi).
inline double angle_of(const Vec2& v) {
    double a = std::atan2(v.y, v.x);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a = 0.0;
    return a;
}

// Wrap an angle to [0, 2pi).
inline double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a -= kTwoPi;
    return a;
}

// Wrap a turning increment to [0, 2pi), snapping values within `snap` of a
// full turn down to zero. Ties at the wrap-around resolve toward 0 so that
// floating-point noise on straight runs never registers as a full turn.
inline double wrap_turn(double a, double snap = 1e-9) {
    a = wrap_angle(a);
    if (a > kTwoPi - snap) a = 0.0;
    return a;
}

// Signed angular gap mapped to (-pi, pi].
inline double signed_gap(double from, double to) {
    double d = std::fmod(to - from, kTwoPi);
    if (d <= -kPi) d += kTwoPi;
    if (d > kPi) d -= kTwoPi;
    return d;
}

// General 2x2 matrix, row-major.
struct Mat2 {
    double a = 1.0, b = 0.0;
    double c = 0.0, d = 1.0;

    static Mat2 identity() { return {}; }
    static Mat2 shear_x(double s) { return {1.0, s, 0.0, 1.0}; }
    static Mat2 rotation(double t) {
        double co = std::cos(t), si = std::sin(t);
        return {co, -si, si, co};
    }
    static Mat2 diag(double p, double q) { return {p, 0.0, 0.0, q}; }

    double det() const { return a * d - b * c; }
    Mat2 transpose() const { return {a, c, b, d}; }
    Mat2 inverse() const {
        double dt = det();
        return {d / dt, -b / dt, -c / dt, a / dt};
    }
    Vec2 apply(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    Mat2 mul(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
};

// Symmetric 2x2 matrix, used for Gaussian inverse covariances.
struct SymMat2 {
    double xx = 1.0, xy = 0.0, yy = 1.0;

    static SymMat2 isotropic(double s) { return {s, 0.0, s}; }

    double det() const { return xx * yy - xy * xy; }
    double trace() const { return xx + yy; }
    bool positive_definite() const { return xx > 0.0 && det() > 0.0; }
    double quad(const Vec2& v) const { return xx * v.x * v.x + 2.0 * xy * v.x * v.y + yy * v.y * v.y; }
    SymMat2 inverse() const {
        double dt = det();
        return {yy / dt, -xy / dt, xx / dt};
    }
    Vec2 apply(const Vec2& v) const { return {xx * v.x + xy * v.y, xy * v.x + yy * v.y}; }
    // Congruence transform M -> V M V^T for a general 2x2 V.
    SymMat2 congruence(const Mat2& v) const {
        Mat2 m{xx, xy, xy, yy};
        Mat2 r = v.mul(m).mul(v.transpose());
        return {r.a, 0.5 * (r.b + r.c), r.d};
    }
    double min_eigenvalue() const {
        double t = 0.5 * trace();
        double disc = std::sqrt(std::max(0.0, t * t - det()));
        return t - disc;
    }
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

enum class Endpoint { Open, Closed };

}  // namespace convrest
