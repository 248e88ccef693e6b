#include "convrest/rect_cover.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <sstream>

#include "convrest/quadrature.hpp"

namespace convrest {

Vec2 Rect::offset_dir() const {
    Vec2 d = corner_b - corner_a;
    double n = norm(d);
    if (n <= 0.0) return {0.0, 0.0};
    // The ccw arc bulges to the right of its chord.
    return perp(d) / n * -1.0;
}

bool Rect::contains(const Vec2& q, double tol) const {
    Vec2 d = corner_b - corner_a;
    double b = norm(d);
    if (b <= 0.0) return dist(q, corner_a) <= tol;
    Vec2 u = d / b;
    Vec2 v = offset_dir();
    Vec2 r = q - corner_a;
    double x = dot(r, u);
    double y = dot(r, v);
    return x >= -tol && x <= b + tol && y >= -tol && y <= h + tol;
}

double Covering::cost() const {
    double s = 0.0;
    for (const CoverPiece& p : pieces) s += std::cbrt(p.rect.area());
    return s;
}

double Covering::max_diameter() const {
    double m = 0.0;
    for (const CoverPiece& p : pieces) m = std::max(m, p.rect.diam());
    return m;
}

bool Covering::covers(const ArclengthChart& chart, double tol) const {
    if (tol <= 0.0) tol = 1e-9 * std::max(1.0, chart.diameter());
    auto covered = [&](const Vec2& q) {
        for (const CoverPiece& p : pieces)
            if (p.rect.contains(q, tol)) return true;
        return false;
    };
    if (!covered(chart.point_at(target.lo)) || !covered(chart.point_at(target.hi))) return false;
    for (std::size_t i : chart.interior_nodes(target))
        if (!covered(chart.node_point(i))) return false;
    return true;
}

Rect rect_over_interval(const ArclengthChart& chart, Interval iv) {
    chart.check_param(iv.lo);
    chart.check_param(iv.hi);
    if (iv.hi <= iv.lo + chart.snap_tol())
        throw ParameterOutOfRange("rect_over_interval: degenerate interval");
    double sig = chart.turning_measure(iv, Endpoint::Open, Endpoint::Open);
    if (sig > 0.5 * kPi + 1e-12) {
        std::ostringstream os;
        os << "interval turning " << sig << " exceeds pi/2";
        throw TurningTooLarge(os.str());
    }
    Rect r;
    r.corner_a = chart.point_at(iv.lo);
    r.corner_b = chart.point_at(iv.hi);
    Vec2 d = r.corner_b - r.corner_a;
    double b = norm(d);
    double h = 0.0;
    if (b > 0.0) {
        for (std::size_t i : chart.interior_nodes(iv)) {
            // Signed distance on the convex (right-of-chord) side.
            double y = cross(d, chart.node_point(i) - r.corner_a) / b;
            h = std::max(h, -y);
        }
    }
    r.h = h;
    return r;
}

namespace {

CoverPiece make_piece(const ArclengthChart& chart, Interval iv) {
    CoverPiece p;
    p.iv = iv;
    p.rect = rect_over_interval(chart, iv);
    p.sigma_open = chart.turning_measure(iv, Endpoint::Open, Endpoint::Open);
    return p;
}

}  // namespace

Covering mu_upper(const ArclengthChart& chart, Interval iv, double delta,
                  const CoverPolicy& policy) {
    chart.check_param(iv.lo);
    chart.check_param(iv.hi);
    if (delta <= 0.0) throw std::invalid_argument("mu_upper: delta must be positive");
    if (iv.hi <= iv.lo) throw ParameterOutOfRange("mu_upper: empty interval");

    Covering cov;
    cov.delta = delta;
    cov.target = iv;

    struct Item {
        Interval iv;
        int depth;
    };
    std::deque<Item> work{{iv, 0}};
    std::vector<CoverPiece> out;

    while (!work.empty()) {
        Item item = work.front();
        work.pop_front();
        if (item.depth > policy.max_depth) {
            std::ostringstream os;
            os << "depth " << policy.max_depth << " reached; chart too coarse for delta = "
               << delta;
            throw ResolutionExhausted(os.str());
        }

        double mid = 0.5 * (item.iv.lo + item.iv.hi);
        std::vector<std::size_t> corners = chart.interior_corners(item.iv);
        if (!corners.empty()) {
            // Split at the interior corner nearest the midpoint: pieces whose
            // interior is corner-free degenerate to segments on polygons.
            double best = chart.node_param(corners.front());
            for (std::size_t c : corners) {
                double tc = chart.node_param(c);
                if (std::fabs(tc - mid) < std::fabs(best - mid)) best = tc;
            }
            work.push_back({{item.iv.lo, best}, item.depth + 1});
            work.push_back({{best, item.iv.hi}, item.depth + 1});
            continue;
        }

        double sig = chart.turning_measure(item.iv, Endpoint::Open, Endpoint::Open);
        bool needs_split = sig > policy.sigma_max;
        if (!needs_split) {
            CoverPiece p = make_piece(chart, item.iv);
            if (p.rect.diam() <= delta) {
                out.push_back(p);
                continue;
            }
            needs_split = true;
        }
        if (needs_split) {
            work.push_back({{item.iv.lo, mid}, item.depth + 1});
            work.push_back({{mid, item.iv.hi}, item.depth + 1});
        }
    }

    std::sort(out.begin(), out.end(),
              [](const CoverPiece& a, const CoverPiece& b) { return a.iv.lo < b.iv.lo; });

    if (policy.merge_pass && out.size() > 1) {
        std::vector<CoverPiece> merged;
        merged.reserve(out.size());
        merged.push_back(out.front());
        for (std::size_t k = 1; k < out.size(); ++k) {
            const CoverPiece& prev = merged.back();
            const CoverPiece& next = out[k];
            bool adjacent = std::fabs(prev.iv.hi - next.iv.lo) <= chart.snap_tol();
            bool did = false;
            if (adjacent && chart.interior_corners({prev.iv.lo, next.iv.hi}).empty()) {
                Interval joint{prev.iv.lo, next.iv.hi};
                double sig = chart.turning_measure(joint, Endpoint::Open, Endpoint::Open);
                if (sig <= policy.sigma_max) {
                    CoverPiece j = make_piece(chart, joint);
                    double old_cost = std::cbrt(prev.rect.area()) + std::cbrt(next.rect.area());
                    if (j.rect.diam() <= delta && std::cbrt(j.rect.area()) < old_cost) {
                        merged.back() = j;
                        did = true;
                    }
                }
            }
            if (!did) merged.push_back(next);
        }
        out = std::move(merged);
    }

    cov.pieces = std::move(out);
    return cov;
}

double sumset_area(const ArclengthChart& chart, Interval iv) {
    chart.check_param(iv.lo);
    chart.check_param(iv.hi);
    double sig = chart.turning_measure(iv, Endpoint::Open, Endpoint::Open);
    if (sig > 0.5 * kPi + 1e-12) throw TurningTooLarge("sumset_area: interval turning > pi/2");
    if (iv.hi <= iv.lo) return 0.0;

    // Iterated form: Im of int e^{i theta(s)} (int_{lo}^{s} e^{-i theta(t)} dt) ds.
    // Midpoint rule per cell is exact on polygon pieces, O(h^2) on smooth ones.
    std::size_t c0 = chart.cell_of(iv.lo);
    std::size_t c1 = chart.cell_of(iv.hi);
    std::complex<double> inner{0.0, 0.0};
    double acc = 0.0;
    for (std::size_t c = c0; c <= c1; ++c) {
        double a = std::max(iv.lo, chart.node_param(c));
        double b = std::min(iv.hi, chart.node_param(c + 1));
        if (b <= a) continue;
        double th = 0.5 * (chart.turning_l(0.5 * (a + b)) + chart.turning_r(0.5 * (a + b)));
        double w = b - a;
        std::complex<double> e_pos = std::polar(1.0, th);
        // Pairs within the cell contribute sin(0) = 0; cross terms pair the
        // cell against everything accumulated before it.
        acc += (e_pos * inner).imag() * w;
        inner += std::polar(1.0, -th) * w;
    }
    return acc;
}

const LowerConstant& lower_constant() {
    static const LowerConstant a = [] {
        LowerConstant c;
        // Ingredient 1: int_c^d ((d-u)(u-c))^{-1/2} du, independent of the
        // interval. Evaluate on two intervals as a consistency check.
        auto one = [](double) { return 1.0; };
        double h1 = integrate_sqrt_singular(one, 0.0, 1.0, 96);
        double h2 = integrate_sqrt_singular(one, -0.7, 2.3, 96);
        c.holder_integral = 0.5 * (h1 + h2);
        if (std::fabs(h1 - h2) > 1e-10)
            throw QuadratureFailure("lower_constant: Holder integral depends on the interval");
        // Ingredient 2: det(z'(t), z''(u)) = kappa(u) cos(angle) with the
        // angle at most pi/4, bounded below by sin(pi/2)/2 = 1/2.
        double worst_cos = 1.0;
        for (int k = 0; k <= 256; ++k)
            worst_cos = std::min(worst_cos, std::cos(0.25 * kPi * k / 256.0));
        c.det_bound = 0.5 * std::sin(0.5 * kPi);
        if (worst_cos < c.det_bound)
            throw QuadratureFailure("lower_constant: angle bound fails on [0, pi/4]");
        // Ingredient 3: |R + R| = 2^dim |R|.
        c.area_factor = std::pow(2.0, 2);
        c.value = std::cbrt(c.det_bound / c.area_factor) /
                  std::pow(c.holder_integral, 2.0 / 3.0);
        return c;
    }();
    return a;
}

double upper_constant() {
    // Part II of the comparability proof: the density of mu is bounded by
    // lim (sigma([s, s+eps]) / eps)^{1/3} = kappa^{1/3}, with coefficient 1.
    return 1.0;
}

double mu_lower(const ArclengthChart& chart, Interval iv) {
    return lower_constant().value * nu_mass(chart, iv);
}

std::vector<Interval> partition_by_turning(const ArclengthChart& chart, int pieces) {
    if (pieces < 1) throw std::invalid_argument("partition needs >= 1 piece");
    const double L = chart.total_length();
    const double total = chart.total_turning();
    std::vector<double> cuts{0.0};
    for (int k = 1; k < pieces; ++k) {
        double target = total * k / pieces;
        // Invert the nondecreasing turning_r by bisection over [0, L].
        double lo = 0.0, hi = L;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if (chart.turning_r(mid) < target) lo = mid;
            else hi = mid;
        }
        double cut = 0.5 * (lo + hi);
        // A cut landing inside (or within rounding of) an atom snaps to the
        // corner parameter.
        double node_snap = 1e-9 * L;
        std::size_t cell = chart.cell_of(cut);
        for (std::size_t idx : {cell, cell + 1})
            if (std::fabs(cut - chart.node_param(idx)) <= node_snap)
                cut = chart.node_param(idx);
        if (cut > cuts.back() + node_snap && cut < L - node_snap) cuts.push_back(cut);
    }
    cuts.push_back(L);
    std::vector<Interval> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) out.push_back({cuts[i], cuts[i + 1]});
    return out;
}

ComparabilityReport comparability_report(const ArclengthChart& chart,
                                         const std::vector<Interval>& partition,
                                         const std::vector<double>& delta_schedule,
                                         const CoverPolicy& policy) {
    if (delta_schedule.empty())
        throw std::invalid_argument("comparability_report: empty delta schedule");
    ComparabilityReport rep;
    rep.constant_a = lower_constant().value;
    rep.constant_b = upper_constant();
    double finest = *std::min_element(delta_schedule.begin(), delta_schedule.end());
    for (const Interval& piece : partition) {
        double nu = nu_mass(chart, piece);
        for (double delta : delta_schedule) {
            ComparabilityRow row;
            row.iv = piece;
            row.nu = nu;
            row.delta = delta;
            row.lower_bound = lower_constant().value * nu;
            row.finest = delta == finest;
            try {
                Covering cov = mu_upper(chart, piece, delta, policy);
                row.mu_upper_cost = cov.cost();
                row.n_rects = cov.size();
            } catch (const ResolutionExhausted&) {
                row.converged = false;
            }
            row.ratio_upper = nu > 0.0 ? row.mu_upper_cost / nu : 0.0;
            row.ratio_lower = row.mu_upper_cost > 0.0 ? row.lower_bound / row.mu_upper_cost : 0.0;
            rep.rows.push_back(row);
        }
    }
    return rep;
}

}  // namespace convrest
