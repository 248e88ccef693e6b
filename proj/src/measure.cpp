#include "convrest/measure.hpp"

#include <algorithm>
#include <cmath>

namespace convrest {

double CurveMeasure::density_at(double tau) const {
    if (t.empty()) return 0.0;
    tau = std::clamp(tau, t.front(), t.back());
    auto it = std::upper_bound(t.begin(), t.end(), tau);
    std::size_t i = (it == t.begin()) ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
    if (i + 1 >= t.size()) i = t.size() - 2;
    double den = t[i + 1] - t[i];
    if (den <= 0.0) return density[i];
    double f = (tau - t[i]) / den;
    return density[i] + f * (density[i + 1] - density[i]);
}

double CurveMeasure::mass(Interval iv, Endpoint lo_kind, Endpoint hi_kind) const {
    if (iv.hi < iv.lo) return 0.0;
    double lo = std::max(iv.lo, t.front());
    double hi = std::min(iv.hi, t.back());
    double acc = 0.0;
    if (hi > lo) {
        auto first = std::upper_bound(t.begin(), t.end(), lo);
        std::size_t i = (first == t.begin()) ? 0 : static_cast<std::size_t>(first - t.begin()) - 1;
        for (; i + 1 < t.size() && t[i] < hi; ++i) {
            double a = std::max(lo, t[i]);
            double b = std::min(hi, t[i + 1]);
            if (b <= a) continue;
            acc += 0.5 * (density_at(a) + density_at(b)) * (b - a);
        }
    }
    for (const auto& [pos, m] : atoms) {
        if (pos < iv.lo - snap || pos > iv.hi + snap) continue;
        bool on_lo = std::fabs(pos - iv.lo) <= snap;
        bool on_hi = std::fabs(pos - iv.hi) <= snap;
        if (on_lo && on_hi) {
            if (lo_kind == Endpoint::Closed || hi_kind == Endpoint::Closed) acc += m;
        } else if (on_lo) {
            if (lo_kind == Endpoint::Closed) acc += m;
        } else if (on_hi) {
            if (hi_kind == Endpoint::Closed) acc += m;
        } else {
            acc += m;
        }
    }
    return acc;
}

double CurveMeasure::total() const {
    // An atom at the start node is stored at the wrap parameter, so the
    // closed full interval counts every atom exactly once.
    return mass({t.front(), t.back()}, Endpoint::Closed, Endpoint::Closed);
}

static CurveMeasure from_chart(const ArclengthChart& chart, bool cube_root, bool with_atoms) {
    CurveMeasure m;
    std::size_t n = chart.node_count();
    m.t.resize(n + 1);
    m.density.resize(n + 1);
    m.snap = chart.snap_tol();
    for (std::size_t i = 0; i <= n; ++i) {
        m.t[i] = chart.node_param(i);
        double k = chart.node_corner(i) ? 0.0 : chart.node_kappa(i);
        m.density[i] = cube_root ? std::cbrt(k) : k;
    }
    if (with_atoms) {
        for (std::size_t i : chart.corner_indices()) {
            if (i == n) continue;  // wrap duplicate of node 0
            double atom = chart.node_turning_r(i) - chart.node_turning_l(i);
            if (i == 0) {
                // The start corner's atom lives at the wrap parameter, where
                // the traversal actually crosses it.
                m.atoms.emplace_back(chart.node_param(n), atom);
            } else {
                m.atoms.emplace_back(chart.node_param(i), atom);
            }
        }
        std::sort(m.atoms.begin(), m.atoms.end());
    }
    return m;
}

CurveMeasure sigma_measure(const ArclengthChart& chart) { return from_chart(chart, false, true); }
CurveMeasure nu_measure(const ArclengthChart& chart) { return from_chart(chart, true, false); }

double nu_mass(const ArclengthChart& chart, Interval iv) {
    chart.check_param(iv.lo);
    chart.check_param(iv.hi);
    if (iv.hi < iv.lo) throw ParameterOutOfRange("nu_mass: interval with hi < lo");
    return nu_measure(chart).mass(iv);
}

}  // namespace convrest
