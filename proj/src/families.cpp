#include "convrest/families.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace convrest {

std::string CurveFamilySpec::id() const {
    if (!name.empty()) return name;
    std::ostringstream os;
    if (kind == "circle") os << "circle_r" << radius << "_n" << nodes;
    else if (kind == "ellipse") os << "ellipse_" << a << "x" << b << "_n" << nodes;
    else if (kind == "superellipse") os << "superellipse_m" << exponent << "_n" << nodes;
    else if (kind == "regular_ngon") os << "ngon" << ngon << "_r" << radius;
    else if (kind == "stadium") os << "stadium_r" << radius << "_f" << flat << "_n" << nodes;
    else if (kind == "random_convex_polygon") os << "randpoly" << points;
    else if (kind == "parabola_cap") os << "parabola_w" << halfwidth << "_n" << nodes;
    else if (kind == "file") os << "file";
    else os << kind;
    return os.str();
}

ConvexCurve make_circle(double radius, int nodes) {
    if (radius <= 0.0) throw std::invalid_argument("circle needs radius > 0");
    CurveInput in;
    in.resolution = std::max(8, nodes);
    for (int k = 0; k < 4; ++k)
        in.vertices.push_back(unit_from_angle(0.5 * kPi * k) * radius);
    for (int k = 0; k < 4; ++k) {
        ArcDescriptor arc;
        arc.kind = ArcDescriptor::Kind::Circle;
        arc.edge = static_cast<std::size_t>(k);
        arc.center = {0.0, 0.0};
        arc.radius = radius;
        in.arcs.push_back(arc);
    }
    in.x0 = Vec2{0.0, 0.0};
    in.x1 = Vec2{radius, 0.0};
    return ConvexCurve::build(in);
}

ConvexCurve make_ellipse(double a, double b, int nodes) {
    if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("ellipse needs positive semi-axes");
    std::vector<NodeSeed> seeds(static_cast<std::size_t>(nodes));
    for (int k = 0; k < nodes; ++k) {
        double u = kTwoPi * k / nodes;
        NodeSeed& s = seeds[static_cast<std::size_t>(k)];
        s.p = {a * std::cos(u), b * std::sin(u)};
        s.tan_in = s.tan_out = angle_of({-a * std::sin(u), b * std::cos(u)});
    }
    return ConvexCurve::from_seeds(std::move(seeds), Vec2{0.0, 0.0}, Vec2{a, 0.0});
}

ConvexCurve make_superellipse(double exponent, double a, double b, int nodes) {
    if (exponent < 2.0) throw std::invalid_argument("superellipse exponent must be >= 2");
    std::vector<NodeSeed> seeds(static_cast<std::size_t>(nodes));
    for (int k = 0; k < nodes; ++k) {
        double phi = kTwoPi * k / nodes;
        double c = std::cos(phi), s = std::sin(phi);
        double r = std::pow(std::pow(std::fabs(c) / a, exponent) +
                                std::pow(std::fabs(s) / b, exponent),
                            -1.0 / exponent);
        Vec2 p{r * c, r * s};
        // Tangent from the implicit gradient of |x/a|^m + |y/b|^m.
        auto sgn = [](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); };
        double gx = exponent / a * sgn(p.x) * std::pow(std::fabs(p.x) / a, exponent - 1.0);
        double gy = exponent / b * sgn(p.y) * std::pow(std::fabs(p.y) / b, exponent - 1.0);
        NodeSeed& seed = seeds[static_cast<std::size_t>(k)];
        seed.p = p;
        seed.tan_in = seed.tan_out = angle_of({-gy, gx});
    }
    Vec2 start = seeds.front().p;
    return ConvexCurve::from_seeds(std::move(seeds), Vec2{0.0, 0.0}, start);
}

ConvexCurve make_regular_ngon(int sides, double radius) {
    if (sides < 3) throw std::invalid_argument("polygon needs >= 3 sides");
    std::vector<NodeSeed> seeds(static_cast<std::size_t>(sides));
    for (int k = 0; k < sides; ++k) {
        double phi = kTwoPi * k / sides + kPi / sides;
        seeds[static_cast<std::size_t>(k)].p = unit_from_angle(phi) * radius;
    }
    return ConvexCurve::from_seeds(std::move(seeds), Vec2{0.0, 0.0}, std::nullopt);
}

ConvexCurve make_stadium(double radius, double flat, int nodes) {
    if (radius <= 0.0 || flat <= 0.0) throw std::invalid_argument("stadium needs r, flat > 0");
    const double total = kTwoPi * radius + 2.0 * flat;
    const int n_arc = std::max(8, static_cast<int>(std::lround(nodes * kPi * radius / total)));
    const int n_flat = std::max(2, static_cast<int>(std::lround(nodes * flat / total)));
    const Vec2 cr{0.5 * flat, 0.0}, cl{-0.5 * flat, 0.0};

    std::vector<NodeSeed> seeds;
    seeds.reserve(static_cast<std::size_t>(2 * n_arc + 2 * n_flat) + 4);
    auto arc_nodes = [&](const Vec2& c, double a0, double a1) {
        for (int k = 0; k <= n_arc; ++k) {
            double ang = a0 + (a1 - a0) * k / n_arc;
            NodeSeed s;
            s.p = c + unit_from_angle(ang) * radius;
            s.tan_in = s.tan_out = wrap_angle(ang + 0.5 * kPi);
            seeds.push_back(s);
        }
    };
    auto flat_nodes = [&](const Vec2& from, const Vec2& to) {
        double ang = angle_of(to - from);
        for (int k = 1; k < n_flat; ++k) {
            NodeSeed s;
            s.p = from + (to - from) * (double(k) / n_flat);
            s.tan_in = s.tan_out = ang;
            seeds.push_back(s);
        }
    };
    arc_nodes(cr, -0.5 * kPi, 0.5 * kPi);
    flat_nodes(cr + Vec2{0.0, radius}, cl + Vec2{0.0, radius});
    arc_nodes(cl, 0.5 * kPi, 1.5 * kPi);
    flat_nodes(cl + Vec2{0.0, -radius}, cr + Vec2{0.0, -radius});
    return ConvexCurve::from_seeds(std::move(seeds), Vec2{0.0, 0.0},
                                   Vec2{0.5 * flat, -radius});
}

ConvexCurve make_random_convex_polygon(int points, std::uint64_t seed) {
    if (points < 3) throw std::invalid_argument("random polygon needs >= 3 points");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<Vec2> pts(static_cast<std::size_t>(points));
    for (Vec2& p : pts) p = {uni(rng), uni(rng)};

    // Andrew monotone chain; result is ccw.
    std::sort(pts.begin(), pts.end(), [](const Vec2& p, const Vec2& q) {
        return p.x < q.x || (p.x == q.x && p.y < q.y);
    });
    auto half = [&](auto begin, auto end) {
        std::vector<Vec2> h;
        for (auto it = begin; it != end; ++it) {
            while (h.size() >= 2 &&
                   cross(h[h.size() - 1] - h[h.size() - 2], *it - h[h.size() - 2]) <= 0.0)
                h.pop_back();
            h.push_back(*it);
        }
        return h;
    };
    std::vector<Vec2> lower = half(pts.begin(), pts.end());
    std::vector<Vec2> upper = half(pts.rbegin(), pts.rend());
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    if (lower.size() < 3) throw DegenerateCurve("random points were collinear");

    std::vector<NodeSeed> seeds(lower.size());
    for (std::size_t i = 0; i < lower.size(); ++i) seeds[i].p = lower[i];
    return ConvexCurve::from_seeds(std::move(seeds), std::nullopt, std::nullopt);
}

ConvexCurve make_parabola_cap(double halfwidth, int nodes) {
    if (halfwidth <= 0.0) throw std::invalid_argument("parabola cap needs halfwidth > 0");
    const double w = halfwidth;
    const double top = 0.5 * w * w;
    if (nodes % 2 != 0) ++nodes;

    std::vector<NodeSeed> seeds;
    seeds.reserve(static_cast<std::size_t>(nodes) + 20);
    // Top chord, right to left; its two endpoints are true corners.
    {
        NodeSeed s;
        s.p = {w, top};
        s.tan_in = std::atan(w);  // arriving along the parabola
        s.tan_out = kPi;          // leaving along the chord
        seeds.push_back(s);
    }
    const int n_chord = 16;
    for (int k = 1; k < n_chord; ++k) {
        NodeSeed s;
        s.p = {w - 2.0 * w * k / n_chord, top};
        s.tan_in = s.tan_out = kPi;
        seeds.push_back(s);
    }
    {
        NodeSeed s;
        s.p = {-w, top};
        s.tan_in = kPi;
        s.tan_out = wrap_angle(std::atan(-w));
        seeds.push_back(s);
    }
    // The parabola y = x^2/2 swept left to right; tangent angle atan(x).
    for (int k = 1; k < nodes; ++k) {
        double x = -w + 2.0 * w * k / nodes;
        NodeSeed s;
        s.p = {x, 0.5 * x * x};
        s.tan_in = s.tan_out = wrap_angle(std::atan(x));
        seeds.push_back(s);
    }
    return ConvexCurve::from_seeds(std::move(seeds), Vec2{0.0, 0.375 * w * w}, Vec2{0.0, 0.0});
}

ConvexCurve generate(const CurveFamilySpec& spec, std::uint64_t seed) {
    if (spec.kind == "circle") return make_circle(spec.radius, spec.nodes);
    if (spec.kind == "ellipse") return make_ellipse(spec.a, spec.b, spec.nodes);
    if (spec.kind == "superellipse")
        return make_superellipse(spec.exponent, spec.a, spec.b, spec.nodes);
    if (spec.kind == "regular_ngon") return make_regular_ngon(spec.ngon, spec.radius);
    if (spec.kind == "stadium") return make_stadium(spec.radius, spec.flat, spec.nodes);
    if (spec.kind == "random_convex_polygon")
        return make_random_convex_polygon(spec.points, seed);
    if (spec.kind == "parabola_cap") return make_parabola_cap(spec.halfwidth, spec.nodes);
    if (spec.kind == "file") return ConvexCurve::build(load_curve_file(spec.path));
    throw std::invalid_argument("unknown curve kind: " + spec.kind);
}

std::vector<NamedCurve> generate_family(const std::vector<CurveFamilySpec>& specs,
                                        std::uint64_t seed) {
    if (specs.empty()) throw std::invalid_argument("no curves in the family spec");
    std::vector<NamedCurve> out;
    out.reserve(specs.size());
    for (const CurveFamilySpec& s : specs) out.push_back({s.id(), generate(s, seed)});
    return out;
}

}  // namespace convrest
