// Compact convex curves as counterclockwise node rings with per-node tangent data.
//
// A curve is stored as a closed polyline. Smooth pieces (circular arcs,
// parametric arcs) are resampled at build time; their sampling nodes carry
// analytic tangent angles so that discretization does not introduce spurious
// corner atoms. True corners are the nodes whose incoming and outgoing
// tangent angles differ.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "convrest/errors.hpp"
#include "convrest/geometry.hpp"

namespace convrest {

// One node of the ring before validation. Tangent angles are absolute plane
// angles in [0, 2pi); unset angles fall back to the adjacent chord direction.
// `smooth_hint` marks sampling nodes of smooth pieces, which are never
// classified as corners even when only chord data is available.
struct NodeSeed {
    Vec2 p;
    std::optional<double> tan_in;
    std::optional<double> tan_out;
    bool smooth_hint = false;
};

struct ArcDescriptor {
    enum class Kind { Circle, Parametric };
    Kind kind = Kind::Circle;
    std::size_t edge = 0;  // refines the edge from vertex `edge` to vertex `edge`+1

    // Circle: ccw arc about `center`; both edge endpoints must lie on it.
    Vec2 center;
    double radius = 0.0;

    // Parametric: interior samples strictly between the edge endpoints.
    // `tangents`, when present, has samples.size() + 2 entries: the tangent
    // angle at the start vertex, at each sample, and at the end vertex.
    std::vector<Vec2> samples;
    std::vector<double> tangents;
};

struct CurveInput {
    std::vector<Vec2> vertices;        // ccw, closed implicitly
    std::vector<ArcDescriptor> arcs;
    std::optional<Vec2> x0;            // interior base point; default: area centroid
    std::optional<Vec2> x1;            // boundary start point; default: vertices[0]
    int resolution = 1024;             // circle-arc samples per full turn
};

class ConvexCurve {
public:
    struct Node {
        Vec2 p;
        double theta_in = 0.0;   // absolute tangent angle of the incoming piece
        double theta_out = 0.0;  // absolute tangent angle of the outgoing piece
        bool corner = false;
    };

    // Expand descriptors, then validate. Throws NotConvex, DegenerateCurve,
    // or BasePointOutside.
    static ConvexCurve build(const CurveInput& input);

    // Validation path for pre-sampled rings (generators, affine images).
    static ConvexCurve from_seeds(std::vector<NodeSeed> seeds, std::optional<Vec2> x0,
                                  std::optional<Vec2> x1);

    const std::vector<Node>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    const Vec2& base_point() const { return x0_; }
    const Vec2& start_point() const { return nodes_.front().p; }

    double area() const { return area_; }
    double perimeter() const { return perimeter_; }
    double diameter() const { return diameter_; }

    bool contains(const Vec2& q) const;  // strict interior

    // Image under a linear map applied to points and tangent directions.
    // Corner flags are preserved; the result is revalidated.
    ConvexCurve transformed(const Mat2& m) const;

private:
    ConvexCurve() = default;

    std::vector<Node> nodes_;
    Vec2 x0_;
    double area_ = 0.0;
    double perimeter_ = 0.0;
    double diameter_ = 0.0;
};

// Boundary point hit by the ray x0 + t e, t > 0 (the function T of the cone
// construction). Requires x0 strictly inside and |e| = 1.
Vec2 ray_hit(const ConvexCurve& curve, const Vec2& x0, const Vec2& e);
double ray_parameter(const ConvexCurve& curve, const Vec2& x0, const Vec2& e);

// JSON curve file (schema documented in the README).
CurveInput load_curve_file(const std::string& path);
CurveInput parse_curve_json(const std::string& text);

}  // namespace convrest
