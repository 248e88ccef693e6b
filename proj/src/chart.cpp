#include "convrest/chart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace convrest {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

ArclengthChart ArclengthChart::build(const ConvexCurve& curve) {
    const auto& nd = curve.nodes();
    const std::size_t n = nd.size();

    ArclengthChart ch;
    ch.t_.resize(n + 1);
    ch.p_.resize(n + 1);
    ch.cum_l_.resize(n + 1);
    ch.cum_r_.resize(n + 1);
    ch.tan_l_.resize(n + 1);
    ch.tan_r_.resize(n + 1);
    ch.corner_.resize(n + 1);
    ch.kappa_.assign(n + 1, kNaN);
    ch.diameter_ = curve.diameter();

    ch.t_[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ch.p_[i] = nd[i].p;
        ch.t_[i + 1] = ch.t_[i] + dist(nd[i].p, nd[(i + 1) % n].p);
    }
    ch.p_[n] = nd[0].p;
    ch.snap_ = 1e-12 * ch.t_[n];

    ch.base_angle_ = nd[0].theta_out;
    for (std::size_t i = 0; i <= n; ++i) {
        const ConvexCurve::Node& src = nd[i % n];
        ch.corner_[i] = src.corner;
        ch.tan_l_[i] = unit_from_angle(src.theta_in);
        ch.tan_r_[i] = unit_from_angle(src.theta_out);
    }

    // Lift node angles to cumulative turning from the start tangent.
    ch.cum_r_[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const ConvexCurve::Node& cur = nd[i];
        const ConvexCurve::Node& nxt = nd[(i + 1) % n];
        double smooth = wrap_turn(nxt.theta_in - cur.theta_out);
        ch.cum_l_[i + 1] = ch.cum_r_[i] + smooth;
        double atom = nxt.corner ? wrap_turn(nxt.theta_out - nxt.theta_in) : 0.0;
        ch.cum_r_[i + 1] = ch.cum_l_[i + 1] + atom;
    }
    ch.total_turn_ = ch.cum_r_[n];
    // Left angle at t = 0 wraps from the curve end: one full turn less.
    ch.cum_l_[0] = ch.cum_l_[n] - ch.total_turn_;

    for (std::size_t i = 0; i <= n; ++i)
        if (ch.corner_[i]) ch.corner_idx_.push_back(i);

    for (std::size_t i = 0; i <= n; ++i) {
        if (ch.corner_[i]) continue;
        double prev_cell = (i > 0) ? ch.t_[i] - ch.t_[i - 1] : ch.t_[n] - ch.t_[n - 1];
        double next_cell = (i < n) ? ch.t_[i + 1] - ch.t_[i] : ch.t_[1] - ch.t_[0];
        double h = std::max(1e-4, 2.0 * std::max(prev_cell, next_cell));
        ch.kappa_[i] = ch.kappa_quotient(ch.t_[i], h);
    }
    return ch;
}

void ArclengthChart::check_param(double t) const {
    if (t < -snap_ || t > total_length() + snap_) {
        std::ostringstream os;
        os << "parameter " << t << " outside [0, " << total_length() << "]";
        throw ParameterOutOfRange(os.str());
    }
}

std::size_t ArclengthChart::cell_of(double t) const {
    check_param(t);
    t = std::clamp(t, 0.0, total_length());
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - t_.begin());
    if (i == 0) return 0;
    if (i >= t_.size()) return t_.size() - 2;
    return i - 1;
}

bool ArclengthChart::at_node(double t, std::size_t* idx) const {
    std::size_t c = cell_of(t);
    if (std::fabs(t - t_[c]) <= snap_) {
        if (idx) *idx = c;
        return true;
    }
    if (std::fabs(t_[c + 1] - t) <= snap_) {
        if (idx) *idx = c + 1;
        return true;
    }
    return false;
}

Vec2 ArclengthChart::point_at(double t) const {
    std::size_t c = cell_of(t);
    double den = t_[c + 1] - t_[c];
    double f = den > 0.0 ? std::clamp((t - t_[c]) / den, 0.0, 1.0) : 0.0;
    return p_[c] + (p_[c + 1] - p_[c]) * f;
}

double ArclengthChart::theta_interp(double t, bool left_side) const {
    std::size_t idx;
    if (at_node(t, &idx)) return left_side ? cum_l_[idx] : cum_r_[idx];
    std::size_t c = cell_of(t);
    double f = (t - t_[c]) / (t_[c + 1] - t_[c]);
    return cum_r_[c] + f * (cum_l_[c + 1] - cum_r_[c]);
}

double ArclengthChart::turning_l(double t) const { return theta_interp(t, true); }
double ArclengthChart::turning_r(double t) const { return theta_interp(t, false); }

TangentPair ArclengthChart::tangents_at(double t) const {
    return {wrap_angle(base_angle_ + turning_l(t)), wrap_angle(base_angle_ + turning_r(t))};
}

double ArclengthChart::turning_measure(Interval iv, Endpoint lo_kind, Endpoint hi_kind) const {
    check_param(iv.lo);
    check_param(iv.hi);
    if (iv.hi < iv.lo - snap_) throw ParameterOutOfRange("interval with hi < lo");
    double m;
    const bool lc = lo_kind == Endpoint::Closed;
    const bool hc = hi_kind == Endpoint::Closed;
    if (lc && hc) m = turning_r(iv.hi) - turning_l(iv.lo);
    else if (lc && !hc) m = turning_l(iv.hi) - turning_l(iv.lo);
    else if (!lc && hc) m = turning_r(iv.hi) - turning_r(iv.lo);
    else m = turning_l(iv.hi) - turning_r(iv.lo);
    return std::max(0.0, m);
}

void ArclengthChart::smooth_run_around(double t, double* pc, double* nc) const {
    const double L = total_length();
    if (corner_idx_.empty()) {
        // No corners anywhere: the run wraps a full period on both sides.
        *pc = t - L;
        *nc = t + L;
        return;
    }
    std::vector<double> cp;
    cp.reserve(corner_idx_.size());
    for (std::size_t i : corner_idx_) cp.push_back(t_[i]);
    auto it = std::upper_bound(cp.begin(), cp.end(), t);
    *nc = (it != cp.end()) ? *it : cp.front() + L;
    *pc = (it != cp.begin()) ? *(it - 1) : cp.back() - L;
}

double ArclengthChart::theta_in_run(double t, double pc, double nc) const {
    // Branch-shifted evaluation: parameters beyond [0, L] add full turns.
    auto theta_ext = [&](double tau, bool left_side) {
        const double L = total_length();
        double shift = 0.0;
        while (tau < -snap_) { tau += L; shift -= total_turn_; }
        while (tau > L + snap_) { tau -= L; shift += total_turn_; }
        return theta_interp(std::clamp(tau, 0.0, L), left_side) + shift;
    };
    if (std::fabs(t - pc) <= snap_) return theta_ext(pc, false);  // right limit past the corner
    if (std::fabs(t - nc) <= snap_) return theta_ext(nc, true);   // left limit before the corner
    return theta_ext(t, false);
}

double ArclengthChart::kappa_quotient(double t, double h) const {
    double pc, nc;
    smooth_run_around(t, &pc, &nc);
    double a = std::max(pc, t - h);
    double b = std::min(nc, t + h);
    // Preserve the stencil width where the run allows, one-sided at corners.
    if (a == pc) b = std::min(nc, a + 2.0 * h);
    else if (b == nc) a = std::max(pc, b - 2.0 * h);
    if (b - a <= snap_) return 0.0;
    double va = theta_in_run(a, pc, nc);
    double vb = theta_in_run(b, pc, nc);
    return std::max(0.0, (vb - va) / (b - a));
}

double ArclengthChart::curvature_density(double t, double fd_step) const {
    check_param(t);
    std::size_t idx;
    if (at_node(t, &idx)) {
        if (corner_[idx])
            throw SingularPoint("curvature requested at a corner (atom of the turning measure)");
        if (fd_step <= 0.0) return kappa_[idx];
        t = t_[idx];
    }
    double h = fd_step;
    if (h <= 0.0) {
        std::size_t c = cell_of(t);
        double prev_cell = (c > 0) ? t_[c] - t_[c - 1] : t_.back() - t_[t_.size() - 2];
        double next_cell = t_[c + 1] - t_[c];
        h = std::max(1e-4, 2.0 * std::max(prev_cell, next_cell));
    }
    return kappa_quotient(t, h);
}

std::vector<std::size_t> ArclengthChart::interior_nodes(Interval iv) const {
    std::vector<std::size_t> out;
    auto lo = std::upper_bound(t_.begin(), t_.end(), iv.lo + snap_);
    for (auto it = lo; it != t_.end() && *it < iv.hi - snap_; ++it)
        out.push_back(static_cast<std::size_t>(it - t_.begin()));
    return out;
}

std::vector<std::size_t> ArclengthChart::interior_corners(Interval iv) const {
    std::vector<std::size_t> out;
    for (std::size_t i : corner_idx_)
        if (t_[i] > iv.lo + snap_ && t_[i] < iv.hi - snap_) out.push_back(i);
    return out;
}

}  // namespace convrest
