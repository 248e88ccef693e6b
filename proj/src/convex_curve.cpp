#include "convrest/convex_curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace convrest {

namespace {

double ring_area(const std::vector<Vec2>& p) {
    double a = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Vec2& u = p[i];
        const Vec2& v = p[(i + 1) % p.size()];
        a += cross(u, v);
    }
    return 0.5 * a;
}

Vec2 ring_centroid(const std::vector<Vec2>& p, double area) {
    Vec2 c{0.0, 0.0};
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Vec2& u = p[i];
        const Vec2& v = p[(i + 1) % p.size()];
        double w = cross(u, v);
        c += (u + v) * w;
    }
    return c / (6.0 * area);
}

double rough_scale(const std::vector<Vec2>& p) {
    double lx = p[0].x, hx = p[0].x, ly = p[0].y, hy = p[0].y;
    for (const Vec2& q : p) {
        lx = std::min(lx, q.x); hx = std::max(hx, q.x);
        ly = std::min(ly, q.y); hy = std::max(hy, q.y);
    }
    return std::hypot(hx - lx, hy - ly);
}

// Rotating calipers over a ccw convex ring.
double calipers_diameter(const std::vector<Vec2>& p) {
    std::size_t n = p.size();
    if (n == 1) return 0.0;
    if (n == 2) return dist(p[0], p[1]);
    double best = 0.0;
    std::size_t j = 1;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t ni = (i + 1) % n;
        Vec2 edge = p[ni] - p[i];
        while (cross(edge, p[(j + 1) % n] - p[j]) > 0.0) j = (j + 1) % n;
        best = std::max(best, dist(p[i], p[j]));
        best = std::max(best, dist(p[ni], p[j]));
    }
    return best;
}

// Mean direction of two unit vectors given by angles; falls back to the
// first angle if they are opposite.
double mean_direction(double a, double b) {
    Vec2 s = unit_from_angle(a) + unit_from_angle(b);
    if (norm(s) < 1e-12) return a;
    return angle_of(s);
}

constexpr double kCornerAtol = 1e-9;  // radians; angle jump below this is smooth

}  // namespace

ConvexCurve ConvexCurve::from_seeds(std::vector<NodeSeed> seeds, std::optional<Vec2> x0,
                                    std::optional<Vec2> x1) {
    if (seeds.size() < 3) throw DegenerateCurve("curve needs at least 3 distinct vertices");

    // Drop consecutive (and wrap-around) duplicates.
    {
        std::vector<Vec2> pts;
        pts.reserve(seeds.size());
        for (const NodeSeed& s : seeds) pts.push_back(s.p);
        double scale = rough_scale(pts);
        if (scale <= 0.0) throw DegenerateCurve("all vertices coincide");
        double tol = kGeomTol * scale;
        std::vector<NodeSeed> kept;
        kept.reserve(seeds.size());
        for (const NodeSeed& s : seeds) {
            if (!kept.empty() && dist(kept.back().p, s.p) <= tol) continue;
            kept.push_back(s);
        }
        while (kept.size() > 1 && dist(kept.front().p, kept.back().p) <= tol) kept.pop_back();
        seeds = std::move(kept);
    }
    if (seeds.size() < 3) throw DegenerateCurve("fewer than 3 distinct vertices");

    const std::size_t n = seeds.size();
    std::vector<Vec2> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = seeds[i].p;

    const double scale = rough_scale(pts);
    const double tol_area = kGeomTol * scale * scale;

    // Convexity and orientation from the chords. The tolerance is an angle
    // (cross scaled by the edge lengths), so densely sampled smooth curves
    // with tiny per-node turns still register as strictly convex.
    std::size_t strictly_convex = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 din = pts[i] - pts[(i + n - 1) % n];
        Vec2 dout = pts[(i + 1) % n] - pts[i];
        double c = cross(din, dout);
        double tol_i = 1e-9 * norm(din) * norm(dout) + 1e-15 * scale * scale;
        if (c < -tol_i) {
            std::ostringstream os;
            os << "reflex vertex at index " << i << " (" << pts[i].x << ", " << pts[i].y << ")";
            throw NotConvex(os.str());
        }
        if (c > tol_i) ++strictly_convex;
    }
    if (strictly_convex < 3) throw DegenerateCurve("curve is flat: fewer than 3 strict turns");

    double area = ring_area(pts);
    if (area <= tol_area) throw DegenerateCurve("enclosed area is zero");

    // Resolve per-node tangent angles.
    std::vector<Node> nodes(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 chord_in = pts[i] - pts[(i + n - 1) % n];
        Vec2 chord_out = pts[(i + 1) % n] - pts[i];
        double cin = angle_of(chord_in);
        double cout = angle_of(chord_out);
        const NodeSeed& s = seeds[i];
        double ain, aout;
        if (!s.tan_in && !s.tan_out && s.smooth_hint) {
            ain = aout = mean_direction(cin, cout);
        } else {
            ain = s.tan_in.value_or(cin);
            aout = s.tan_out.value_or(cout);
        }
        double gap = signed_gap(ain, aout);
        if (gap < -kCornerAtol) {
            std::ostringstream os;
            os << "tangent angles turn clockwise at node " << i;
            throw NotConvex(os.str());
        }
        Node& nd = nodes[i];
        nd.p = pts[i];
        nd.corner = gap > kCornerAtol;
        if (nd.corner) {
            nd.theta_in = wrap_angle(ain);
            nd.theta_out = wrap_angle(aout);
        } else {
            double a = (s.tan_in && !s.tan_out) ? ain
                     : (!s.tan_in && s.tan_out) ? aout
                                                : mean_direction(ain, aout);
            nd.theta_in = nd.theta_out = wrap_angle(a);
        }
    }

    // Tangent data must be compatible with the vertex order: along each edge
    // the chord direction lies between the outgoing and next incoming angle.
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = (i + 1) % n;
        double chord = angle_of(pts[j] - pts[i]);
        double gap = wrap_turn(nodes[j].theta_in - nodes[i].theta_out);
        if (gap > kPi) {
            std::ostringstream os;
            os << "tangent data turns by " << gap << " rad across edge " << i
               << "; curve is undersampled or angles are inconsistent";
            throw NotConvex(os.str());
        }
        double a = wrap_turn(chord - nodes[i].theta_out);
        double b = wrap_turn(nodes[j].theta_in - chord);
        if (a > gap + 1e-6 || b > gap + 1e-6) {
            std::ostringstream os;
            os << "chord of edge " << i << " leaves the tangent cone";
            throw NotConvex(os.str());
        }
    }

    ConvexCurve curve;
    curve.nodes_ = std::move(nodes);
    curve.area_ = area;

    Vec2 base = x0 ? *x0 : ring_centroid(pts, area);
    // Strict interior test against every edge half-plane.
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 d = pts[(i + 1) % n] - pts[i];
        if (cross(d, base - pts[i]) <= kGeomTol * scale * norm(d)) {
            std::ostringstream os;
            os << "base point (" << base.x << ", " << base.y << ") is not strictly inside";
            throw BasePointOutside(os.str());
        }
    }
    curve.x0_ = base;

    // Rotate (and possibly insert) so that the ring starts at x1.
    if (x1) {
        const Vec2 target = *x1;
        double best_d2 = std::numeric_limits<double>::infinity();
        std::size_t best_edge = 0;
        double best_u = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            Vec2 a = pts[i], d = pts[(i + 1) % n] - pts[i];
            double u = std::clamp(dot(target - a, d) / norm2(d), 0.0, 1.0);
            Vec2 proj = a + d * u;
            double d2 = norm2(target - proj);
            if (d2 < best_d2) {
                best_d2 = d2;
                best_edge = i;
                best_u = u;
            }
        }
        if (std::sqrt(best_d2) > 1e-9 * scale)
            throw std::invalid_argument("start point x1 does not lie on the curve");
        double edge_len = dist(pts[best_edge], pts[(best_edge + 1) % n]);
        std::vector<Node>& nd = curve.nodes_;
        if (best_u * edge_len <= 1e-9 * scale) {
            std::rotate(nd.begin(), nd.begin() + best_edge, nd.end());
        } else if ((1.0 - best_u) * edge_len <= 1e-9 * scale) {
            std::rotate(nd.begin(), nd.begin() + (best_edge + 1) % n, nd.end());
        } else {
            // Split the edge at x1; the new node is smooth and collinear.
            Node extra;
            extra.p = pts[best_edge] + (pts[(best_edge + 1) % n] - pts[best_edge]) * best_u;
            extra.theta_in = extra.theta_out =
                angle_of(pts[(best_edge + 1) % n] - pts[best_edge]);
            extra.corner = false;
            nd.insert(nd.begin() + best_edge + 1, extra);
            std::rotate(nd.begin(), nd.begin() + best_edge + 1, nd.end());
        }
    }

    double per = 0.0;
    for (std::size_t i = 0; i < curve.nodes_.size(); ++i)
        per += dist(curve.nodes_[i].p, curve.nodes_[(i + 1) % curve.nodes_.size()].p);
    curve.perimeter_ = per;

    std::vector<Vec2> final_pts(curve.nodes_.size());
    for (std::size_t i = 0; i < curve.nodes_.size(); ++i) final_pts[i] = curve.nodes_[i].p;
    curve.diameter_ = calipers_diameter(final_pts);
    return curve;
}

ConvexCurve ConvexCurve::build(const CurveInput& input) {
    const std::vector<Vec2>& verts = input.vertices;
    if (verts.size() < 3) throw DegenerateCurve("curve needs at least 3 vertices");
    if (input.resolution < 4) throw std::invalid_argument("resolution must be >= 4");

    std::vector<NodeSeed> vertex_seeds(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) vertex_seeds[i].p = verts[i];

    // Interior samples per edge, filled from the descriptors.
    std::vector<std::vector<NodeSeed>> edge_samples(verts.size());

    for (const ArcDescriptor& arc : input.arcs) {
        if (arc.edge >= verts.size()) throw std::invalid_argument("arc edge index out of range");
        const Vec2& a = verts[arc.edge];
        const Vec2& b = verts[(arc.edge + 1) % verts.size()];
        std::vector<NodeSeed>& out = edge_samples[arc.edge];
        if (!out.empty()) throw std::invalid_argument("duplicate arc descriptor for one edge");

        if (arc.kind == ArcDescriptor::Kind::Circle) {
            if (arc.radius <= 0.0) throw std::invalid_argument("circle arc needs radius > 0");
            double ra = dist(a, arc.center), rb = dist(b, arc.center);
            if (std::fabs(ra - arc.radius) > 1e-9 * arc.radius ||
                std::fabs(rb - arc.radius) > 1e-9 * arc.radius)
                throw std::invalid_argument("circle arc endpoints are not on the circle");
            double a0 = angle_of(a - arc.center);
            double span = wrap_turn(angle_of(b - arc.center) - a0);
            if (span == 0.0) span = kTwoPi;  // antipodal-free full wrap is excluded by distinct vertices
            int sub = std::max<int>(1, std::lround(input.resolution * span / kTwoPi));
            for (int k = 1; k < sub; ++k) {
                double ang = a0 + span * k / sub;
                NodeSeed s;
                s.p = arc.center + unit_from_angle(ang) * arc.radius;
                s.tan_in = s.tan_out = wrap_angle(ang + 0.5 * kPi);
                out.push_back(s);
            }
            vertex_seeds[arc.edge].tan_out = wrap_angle(a0 + 0.5 * kPi);
            vertex_seeds[(arc.edge + 1) % verts.size()].tan_in =
                wrap_angle(a0 + span + 0.5 * kPi);
        } else {
            const std::vector<Vec2>& smp = arc.samples;
            bool with_tan = !arc.tangents.empty();
            if (with_tan && arc.tangents.size() != smp.size() + 2)
                throw std::invalid_argument("parametric tangents must cover endpoints and samples");
            for (std::size_t k = 0; k < smp.size(); ++k) {
                NodeSeed s;
                s.p = smp[k];
                if (with_tan) s.tan_in = s.tan_out = wrap_angle(arc.tangents[k + 1]);
                s.smooth_hint = true;
                out.push_back(s);
            }
            if (with_tan) {
                vertex_seeds[arc.edge].tan_out = wrap_angle(arc.tangents.front());
                vertex_seeds[(arc.edge + 1) % verts.size()].tan_in =
                    wrap_angle(arc.tangents.back());
            }
        }
    }

    std::vector<NodeSeed> ring;
    ring.reserve(verts.size() + input.resolution);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        ring.push_back(vertex_seeds[i]);
        for (const NodeSeed& s : edge_samples[i]) ring.push_back(s);
    }

    std::optional<Vec2> x1 = input.x1;
    if (!x1) x1 = verts.front();
    return from_seeds(std::move(ring), input.x0, x1);
}

bool ConvexCurve::contains(const Vec2& q) const {
    const std::size_t n = nodes_.size();
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 d = nodes_[(i + 1) % n].p - nodes_[i].p;
        if (cross(d, q - nodes_[i].p) <= 0.0) return false;
    }
    return true;
}

ConvexCurve ConvexCurve::transformed(const Mat2& m) const {
    if (std::fabs(m.det()) < 1e-12) throw std::invalid_argument("transform is singular");
    std::vector<NodeSeed> seeds(nodes_.size());
    bool flip = m.det() < 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& nd = nodes_[i];
        NodeSeed& s = seeds[i];
        s.p = m.apply(nd.p);
        s.tan_in = angle_of(m.apply(unit_from_angle(nd.theta_in)));
        s.tan_out = angle_of(m.apply(unit_from_angle(nd.theta_out)));
    }
    if (flip) {
        // Orientation reverses: traverse backwards and flip tangent senses.
        std::vector<NodeSeed> rev;
        rev.reserve(seeds.size());
        for (std::size_t k = seeds.size(); k-- > 0;) {
            NodeSeed s;
            s.p = seeds[k].p;
            s.tan_in = wrap_angle(seeds[k].tan_out.value() + kPi);
            s.tan_out = wrap_angle(seeds[k].tan_in.value() + kPi);
            rev.push_back(s);
        }
        seeds = std::move(rev);
    }
    Vec2 new_x0 = m.apply(x0_);
    Vec2 new_x1 = m.apply(nodes_.front().p);
    return from_seeds(std::move(seeds), new_x0, new_x1);
}

double ray_parameter(const ConvexCurve& curve, const Vec2& x0, const Vec2& e) {
    if (std::fabs(norm(e) - 1.0) > 1e-9)
        throw std::invalid_argument("ray direction must be a unit vector");
    if (!curve.contains(x0)) throw BasePointOutside("ray base point is not strictly inside");

    const auto& nodes = curve.nodes();
    const std::size_t n = nodes.size();
    double best_t = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = nodes[i].p;
        Vec2 d = nodes[(i + 1) % n].p - a;
        double denom = cross(e, d);
        if (std::fabs(denom) < 1e-15 * norm(d)) continue;  // parallel edge
        double t = cross(a - x0, d) / denom;
        double u = cross(a - x0, e) / denom;
        if (t > 0.0 && u >= -1e-12 && u <= 1.0 + 1e-12) best_t = std::max(best_t, t);
    }
    if (best_t <= 0.0) throw BasePointOutside("ray does not exit the curve");
    return best_t;
}

Vec2 ray_hit(const ConvexCurve& curve, const Vec2& x0, const Vec2& e) {
    return x0 + e * ray_parameter(curve, x0, e);
}

namespace {

Vec2 json_point(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("point must be [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

CurveInput parse_curve_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    static const char* known[] = {"vertices", "arcs", "x0", "x1", "resolution"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw std::invalid_argument("unknown curve file key: " + it.key());
    }
    CurveInput in;
    if (!j.contains("vertices")) throw std::invalid_argument("curve file needs \"vertices\"");
    for (const auto& v : j.at("vertices")) in.vertices.push_back(json_point(v));
    if (j.contains("resolution")) in.resolution = j.at("resolution").get<int>();
    if (j.contains("x0")) in.x0 = json_point(j.at("x0"));
    if (j.contains("x1")) in.x1 = json_point(j.at("x1"));
    if (j.contains("arcs")) {
        for (const auto& a : j.at("arcs")) {
            ArcDescriptor arc;
            arc.edge = a.at("edge").get<std::size_t>();
            std::string kind = a.at("kind").get<std::string>();
            if (kind == "circle") {
                arc.kind = ArcDescriptor::Kind::Circle;
                arc.center = json_point(a.at("center"));
                arc.radius = a.at("radius").get<double>();
            } else if (kind == "parametric") {
                arc.kind = ArcDescriptor::Kind::Parametric;
                for (const auto& s : a.at("samples")) arc.samples.push_back(json_point(s));
                if (a.contains("tangents"))
                    for (const auto& t : a.at("tangents")) arc.tangents.push_back(t.get<double>());
            } else {
                throw std::invalid_argument("unknown arc kind: " + kind);
            }
            in.arcs.push_back(std::move(arc));
        }
    }
    return in;
}

CurveInput load_curve_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open curve file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_curve_json(ss.str());
}

}  // namespace convrest
