#include <doctest.h>

#include <cmath>

#include "convrest/convex_curve.hpp"
#include "convrest/families.hpp"
#include "oracles.hpp"

using namespace convrest;

namespace {

CurveInput square_input() {
    CurveInput in;
    in.vertices = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
    in.x0 = Vec2{0.0, 0.0};
    return in;
}

// Independent segment-ray intersection by Cramer's rule, used as the oracle
// for ray_hit on polygons.
bool segment_ray(const Vec2& x0, const Vec2& e, const Vec2& a, const Vec2& b, Vec2* hit) {
    Vec2 d = b - a;
    double det = e.x * (-d.y) - e.y * (-d.x);
    if (std::fabs(det) < 1e-14) return false;
    Vec2 rhs = a - x0;
    double t = (rhs.x * (-d.y) - rhs.y * (-d.x)) / det;
    double u = (e.x * rhs.y - e.y * rhs.x) / det;
    if (t <= 0.0 || u < 0.0 || u > 1.0) return false;
    *hit = x0 + e * t;
    return true;
}

}  // namespace

TEST_CASE("unit square builds with hull area 4") {
    ConvexCurve c = ConvexCurve::build(square_input());
    CHECK(c.area() == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(c.perimeter() == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(c.size() == 4);
    for (const auto& n : c.nodes()) CHECK(n.corner);
}

TEST_CASE("L-shaped hexagon is rejected as not convex") {
    CurveInput in;
    in.vertices = {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};  // reflex at (1,1)
    in.x0 = Vec2{0.5, 0.5};
    CHECK_THROWS_AS(ConvexCurve::build(in), NotConvex);
}

TEST_CASE("regular 64-gon has the closed-form perimeter") {
    ConvexCurve c = make_regular_ngon(64, 1.0);
    CHECK(c.perimeter() ==
          doctest::Approx(oracle::inscribed_polygon_perimeter(64, 1.0)).epsilon(1e-13));
    CHECK(c.perimeter() == doctest::Approx(128.0 * std::sin(oracle::pi / 64.0)).epsilon(1e-13));
}

TEST_CASE("degenerate inputs are rejected") {
    CurveInput two;
    two.vertices = {{0, 0}, {1, 0}};
    CHECK_THROWS_AS(ConvexCurve::build(two), DegenerateCurve);

    CurveInput dup;
    dup.vertices = {{0, 0}, {0, 0}, {1, 0}, {1, 0}};
    CHECK_THROWS_AS(ConvexCurve::build(dup), DegenerateCurve);

    CurveInput flat;
    flat.vertices = {{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    CHECK_THROWS_AS(ConvexCurve::build(flat), DegenerateCurve);

    CurveInput cw;
    cw.vertices = {{1, 1}, {1, -1}, {-1, -1}, {-1, 1}};  // clockwise
    CHECK_THROWS_AS(ConvexCurve::build(cw), NotConvex);
}

TEST_CASE("base point must be strictly inside") {
    CurveInput in = square_input();
    in.x0 = Vec2{2.0, 0.0};
    CHECK_THROWS_AS(ConvexCurve::build(in), BasePointOutside);
    in.x0 = Vec2{1.0, 0.0};  // on the boundary
    CHECK_THROWS_AS(ConvexCurve::build(in), BasePointOutside);
}

TEST_CASE("consecutive duplicate vertices are dropped") {
    CurveInput in;
    in.vertices = {{1, 1}, {1, 1}, {-1, 1}, {-1, -1}, {1, -1}, {1, 1}};
    in.x0 = Vec2{0, 0};
    ConvexCurve c = ConvexCurve::build(in);
    CHECK(c.size() == 4);
}

TEST_CASE("ray from the centre of the circle exits along the radius") {
    ConvexCurve circle = make_circle(1.0, 512);
    Vec2 hit = ray_hit(circle, {0, 0}, {1, 0});
    CHECK(hit.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hit.y == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ray_parameter(circle, {0, 0}, {1, 0}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("square diagonal ray hits the corner (segment-ray oracle)") {
    ConvexCurve sq = ConvexCurve::build(square_input());
    double s = 1.0 / std::sqrt(2.0);
    Vec2 e{s, s};
    Vec2 hit = ray_hit(sq, {0, 0}, e);

    Vec2 expect{0, 0};
    bool found = false;
    const auto& nd = sq.nodes();
    for (std::size_t i = 0; i < nd.size(); ++i) {
        Vec2 h;
        if (segment_ray({0, 0}, e, nd[i].p, nd[(i + 1) % nd.size()].p, &h)) {
            expect = h;
            found = true;
        }
    }
    REQUIRE(found);
    CHECK(hit.x == doctest::Approx(expect.x).epsilon(1e-12));
    CHECK(hit.y == doctest::Approx(expect.y).epsilon(1e-12));
    CHECK(hit.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hit.y == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("axis-aligned exit from an off-centre base point") {
    ConvexCurve sq = ConvexCurve::build(square_input());
    Vec2 hit = ray_hit(sq, {0.5, 0.0}, {-1.0, 0.0});
    CHECK(hit.x == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(hit.y == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(ray_hit(sq, {3.0, 0.0}, {-1.0, 0.0}), BasePointOutside);
}

TEST_CASE("start point x1 rotates or splits the ring") {
    CurveInput in = square_input();
    in.x1 = Vec2{-1.0, 1.0};  // existing vertex
    ConvexCurve c = ConvexCurve::build(in);
    CHECK(c.start_point().x == doctest::Approx(-1.0));
    CHECK(c.size() == 4);

    in.x1 = Vec2{0.0, 1.0};  // mid-edge: inserted node
    ConvexCurve d = ConvexCurve::build(in);
    CHECK(d.start_point().x == doctest::Approx(0.0));
    CHECK(d.start_point().y == doctest::Approx(1.0));
    CHECK(d.size() == 5);
    CHECK_FALSE(d.nodes().front().corner);

    in.x1 = Vec2{5.0, 5.0};  // not on the curve
    CHECK_THROWS_AS(ConvexCurve::build(in), std::invalid_argument);
}

TEST_CASE("linear images stay convex and transform area by the determinant") {
    ConvexCurve sq = ConvexCurve::build(square_input());
    Mat2 shear = Mat2::shear_x(0.7);
    ConvexCurve sh = sq.transformed(shear);
    CHECK(sh.area() == doctest::Approx(4.0).epsilon(1e-12));

    Mat2 reflect{-1.0, 0.0, 0.0, 1.0};  // det < 0: orientation must be repaired
    ConvexCurve rf = sq.transformed(reflect);
    CHECK(rf.area() == doctest::Approx(4.0).epsilon(1e-12));

    ConvexCurve circle = make_circle(1.0, 256);
    ConvexCurve ell = circle.transformed(Mat2::diag(2.0, 0.5));
    CHECK(ell.area() == doctest::Approx(circle.area()).epsilon(1e-12));
}

TEST_CASE("curve file schema round-trips and rejects unknown keys") {
    std::string text = R"({
        "vertices": [[1, 1], [-1, 1], [-1, -1], [1, -1]],
        "x0": [0, 0],
        "resolution": 64
    })";
    CurveInput in = parse_curve_json(text);
    CHECK(in.vertices.size() == 4);
    CHECK(in.resolution == 64);
    ConvexCurve c = ConvexCurve::build(in);
    CHECK(c.area() == doctest::Approx(4.0));

    CHECK_THROWS_AS(parse_curve_json(R"({"vertices": [[0,0],[1,0],[0,1]], "bogus": 1})"),
                    std::invalid_argument);

    std::string arc = R"({
        "vertices": [[1, 0], [0, 1], [-1, 0], [0, -1]],
        "arcs": [
            {"edge": 0, "kind": "circle", "center": [0, 0], "radius": 1},
            {"edge": 1, "kind": "circle", "center": [0, 0], "radius": 1},
            {"edge": 2, "kind": "circle", "center": [0, 0], "radius": 1},
            {"edge": 3, "kind": "circle", "center": [0, 0], "radius": 1}
        ],
        "resolution": 256
    })";
    ConvexCurve circ = ConvexCurve::build(parse_curve_json(arc));
    CHECK(circ.perimeter() ==
          doctest::Approx(oracle::inscribed_polygon_perimeter(256, 1.0)).epsilon(1e-10));
}

TEST_CASE("diameter matches brute force on random polygons") {
    for (std::uint64_t seed : {1ULL, 7ULL, 42ULL}) {
        ConvexCurve poly = make_random_convex_polygon(40, seed);
        double brute = 0.0;
        const auto& nd = poly.nodes();
        for (std::size_t i = 0; i < nd.size(); ++i)
            for (std::size_t j = i + 1; j < nd.size(); ++j)
                brute = std::max(brute, dist(nd[i].p, nd[j].p));
        CHECK(poly.diameter() == doctest::Approx(brute).epsilon(1e-13));
    }
}
