// Rectangles over curve intervals, covering certificates for the affine
// measure mu, and the two-sided comparability machinery against nu.
#pragma once

#include <vector>

#include "convrest/chart.hpp"
#include "convrest/measure.hpp"

namespace convrest {

// Rectangle with one side on the chord from corner_a to corner_b and height
// h on the convex side of the arc. h = 0 degenerates to the segment itself.
struct Rect {
    Vec2 corner_a;
    Vec2 corner_b;
    double h = 0.0;

    double breadth() const { return dist(corner_a, corner_b); }
    double area() const { return breadth() * h; }
    double diam() const { return std::hypot(breadth(), h); }
    // Inward normal (towards the covered arc).
    Vec2 offset_dir() const;
    bool contains(const Vec2& q, double tol) const;
};

struct CoverPiece {
    Interval iv;
    Rect rect;
    double sigma_open = 0.0;  // turning of the open interior
};

// A finite covering of z(interval) by rectangles with diameter <= delta;
// its cost is an upper bound for mu^delta of the arc.
struct Covering {
    std::vector<CoverPiece> pieces;
    double delta = 0.0;
    Interval target;

    double cost() const;
    std::size_t size() const { return pieces.size(); }
    // Every chart node of the target arc lies in some rectangle.
    bool covers(const ArclengthChart& chart, double tol = 0.0) const;
    double max_diameter() const;
};

struct CoverPolicy {
    double sigma_max = 0.5 * kPi;  // split any piece turning more than this
    int max_depth = 48;
    bool merge_pass = true;
};

// Minimal rectangle over z([c, d]) per the chord-and-sagitta construction.
// Requires sigma of the open interior <= pi/2 (TurningTooLarge otherwise).
Rect rect_over_interval(const ArclengthChart& chart, Interval iv);

// Covering certificate by recursive bisection: a piece splits while its
// rectangle diameter exceeds delta, its interior turning exceeds pi/2, or a
// corner lies strictly inside (splitting at the corner isolates segments, so
// polygon arcs get degenerate covers). A greedy merge sweep then rejoins
// adjacent pieces when that lowers the cost without violating constraints.
Covering mu_upper(const ArclengthChart& chart, Interval iv, double delta,
                  const CoverPolicy& policy = {});

// Integral of det(z'(t), z'(s)) = sin(theta(s) - theta(t)) over the lower
// triangle {t < s} of iv x iv; equals the area swept by z(s) + z(t) inside
// the doubled rectangle.
double sumset_area(const ArclengthChart& chart, Interval iv);

// The lower-bound constant A with its proof ingredients, evaluated
// numerically at startup rather than hard-coded.
struct LowerConstant {
    double value = 0.0;          // A = (det_bound / area_factor)^{1/3} / holder_integral^{2/3}
    double holder_integral = 0.0;  // int ((d-u)(u-c))^{-1/2} du, independent of c, d
    double det_bound = 0.0;        // kappa coefficient in det(z'(t), z''(u)) >= c kappa(u)
    double area_factor = 0.0;      // |R + R| / |R|
};
const LowerConstant& lower_constant();

// B in mu <= B nu, from the density bound mu' <= kappa^{1/3}.
double upper_constant();

// A * nu(iv): the certified lower bound for mu of the arc.
double mu_lower(const ArclengthChart& chart, Interval iv);

struct ComparabilityRow {
    Interval iv;
    double nu = 0.0;
    double mu_upper_cost = 0.0;
    double lower_bound = 0.0;   // A * nu
    double ratio_upper = 0.0;   // cost / nu (0 when nu = 0)
    double ratio_lower = 0.0;   // lower_bound / cost (0 when cost = 0)
    double delta = 0.0;
    std::size_t n_rects = 0;
    bool converged = true;
    bool finest = false;
};

struct ComparabilityReport {
    std::vector<ComparabilityRow> rows;  // per (interval, delta), ordered
    double constant_a = 0.0;
    double constant_b = 0.0;
};

// Split [0, L] into `pieces` intervals of equal turning; boundaries landing
// inside a corner atom snap to the corner parameter. Each resulting piece
// has interior turning at most total/pieces.
std::vector<Interval> partition_by_turning(const ArclengthChart& chart, int pieces);

ComparabilityReport comparability_report(const ArclengthChart& chart,
                                         const std::vector<Interval>& partition,
                                         const std::vector<double>& delta_schedule,
                                         const CoverPolicy& policy = {});

}  // namespace convrest
