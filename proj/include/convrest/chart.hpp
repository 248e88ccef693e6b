// Arclength parametrization of a convex curve with its turning-angle data.
//
// The chart parametrizes the polyline by cumulative chord length, t in
// [0, L]. Node angles are lifted to cumulative turning angles measured from
// the start tangent (theta_r(0) = 0), nondecreasing along the curve and
// reaching the total turning (2 pi) at the wrap node. The turning measure
// sigma of any subinterval, with open or closed endpoints, is an exact
// difference of these lifted angles; corner atoms are the jumps theta_r -
// theta_l at corner nodes. The curvature density kappa is the difference
// quotient of theta_r over arclength, evaluated inside the maximal smooth
// run around each node so corner atoms never leak into it.
#pragma once

#include <cstddef>
#include <vector>

#include "convrest/convex_curve.hpp"
#include "convrest/geometry.hpp"

namespace convrest {

struct TangentPair {
    double theta_l = 0.0;
    double theta_r = 0.0;
};

class ArclengthChart {
public:
    static ArclengthChart build(const ConvexCurve& curve);

    double total_length() const { return t_.back(); }
    double total_turning() const { return total_turn_; }
    double diameter() const { return diameter_; }

    // Nodes 0..count-1 are distinct; index count is the wrap copy of node 0.
    std::size_t node_count() const { return t_.size() - 1; }
    double node_param(std::size_t i) const { return t_[i]; }
    const Vec2& node_point(std::size_t i) const { return p_[i]; }
    bool node_corner(std::size_t i) const { return corner_[i]; }
    double node_kappa(std::size_t i) const { return kappa_[i]; }  // NaN at corners
    const Vec2& node_tangent_l(std::size_t i) const { return tan_l_[i]; }
    const Vec2& node_tangent_r(std::size_t i) const { return tan_r_[i]; }
    double node_turning_l(std::size_t i) const { return cum_l_[i]; }
    double node_turning_r(std::size_t i) const { return cum_r_[i]; }
    const std::vector<std::size_t>& corner_indices() const { return corner_idx_; }

    Vec2 point_at(double t) const;

    // Absolute tangent angles in [0, 2pi); equal except at corners.
    TangentPair tangents_at(double t) const;

    // Cumulative turning angles (relative to the start tangent). turning_l(0)
    // is <= 0: the left angle at the start point wraps from the curve end.
    double turning_l(double t) const;
    double turning_r(double t) const;

    // The turning measure sigma of an interval, by the four-case display.
    double turning_measure(Interval iv, Endpoint lo_kind, Endpoint hi_kind) const;

    // Curvature density at a smooth location by a symmetric difference
    // quotient of theta_r. fd_step <= 0 selects max(1e-4, 2 * node spacing).
    // Throws SingularPoint at corner nodes.
    double curvature_density(double t, double fd_step = 0.0) const;

    // Cell i covers [t_i, t_{i+1}); returns node_count()-1 at t = L.
    std::size_t cell_of(double t) const;
    bool at_node(double t, std::size_t* idx) const;

    // Node indices i with lo < t_i < hi (strictly interior, snap-tolerant).
    std::vector<std::size_t> interior_nodes(Interval iv) const;
    // Corner node indices strictly inside the interval.
    std::vector<std::size_t> interior_corners(Interval iv) const;

    void check_param(double t) const;
    double snap_tol() const { return snap_; }

private:
    ArclengthChart() = default;

    double theta_interp(double t, bool left_side) const;
    // theta_r restricted to the smooth run (pc, nc); endpoints evaluate to
    // the one-sided limits that exclude the corner atoms.
    double theta_in_run(double t, double pc, double nc) const;
    void smooth_run_around(double t, double* pc, double* nc) const;
    double kappa_quotient(double t, double h) const;

    std::vector<double> t_;       // size N+1
    std::vector<Vec2> p_;         // size N+1
    std::vector<double> cum_l_;   // size N+1
    std::vector<double> cum_r_;   // size N+1
    std::vector<Vec2> tan_l_, tan_r_;
    std::vector<bool> corner_;
    std::vector<double> kappa_;
    std::vector<std::size_t> corner_idx_;
    double base_angle_ = 0.0;     // absolute angle of the start tangent
    double total_turn_ = 0.0;
    double diameter_ = 0.0;
    double snap_ = 0.0;
};

}  // namespace convrest
