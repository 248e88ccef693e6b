#include <doctest.h>

#include <cmath>

#include "convrest/chart.hpp"
#include "convrest/families.hpp"
#include "oracles.hpp"

using namespace convrest;

TEST_CASE("circle generator: node count and perimeter") {
    ConvexCurve c = make_circle(1.0, 512);
    CHECK(c.size() == 512);
    CHECK(std::fabs(c.perimeter() - 2.0 * oracle::pi) <= 1e-4);
    CHECK(c.perimeter() == doctest::Approx(oracle::inscribed_polygon_perimeter(512, 1.0))
                               .epsilon(1e-12));
}

TEST_CASE("regular 4-gon of radius sqrt(2) is the unit square up to rotation") {
    ConvexCurve c = make_regular_ngon(4, std::sqrt(2.0));
    REQUIRE(c.size() == 4);
    for (const auto& n : c.nodes()) {
        CHECK(std::fabs(std::fabs(n.p.x) - 1.0) <= 1e-12);
        CHECK(std::fabs(std::fabs(n.p.y) - 1.0) <= 1e-12);
    }
    CHECK(c.area() == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("random polygons are deterministic in the seed") {
    ConvexCurve a = make_random_convex_polygon(20, 7);
    ConvexCurve b = make_random_convex_polygon(20, 7);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.nodes()[i].p.x == b.nodes()[i].p.x);
        CHECK(a.nodes()[i].p.y == b.nodes()[i].p.y);
    }
    ConvexCurve c = make_random_convex_polygon(20, 8);
    bool same = a.size() == c.size();
    if (same)
        for (std::size_t i = 0; i < a.size(); ++i)
            same = same && a.nodes()[i].p.x == c.nodes()[i].p.x;
    CHECK_FALSE(same);
}

TEST_CASE("every generated family member validates and closes its turning") {
    std::vector<CurveFamilySpec> specs = {
        {.kind = "circle", .radius = 1.0, .nodes = 256},
        {.kind = "ellipse", .a = 2.0, .b = 1.0, .nodes = 256},
        {.kind = "superellipse", .a = 1.0, .b = 1.0, .exponent = 4.0, .nodes = 256},
        {.kind = "regular_ngon", .radius = 1.0, .ngon = 64},
        {.kind = "stadium", .radius = 1.0, .flat = 2.0, .nodes = 256},
        {.kind = "random_convex_polygon", .points = 30},
        {.kind = "parabola_cap", .halfwidth = 1.0, .nodes = 256},
    };
    for (const NamedCurve& nc : generate_family(specs, 5)) {
        ArclengthChart chart = ArclengthChart::build(nc.curve);
        CHECK(std::fabs(chart.total_turning() - 2.0 * oracle::pi) <= 1e-9);
    }
    CHECK_THROWS_AS(generate_family({}, 5), std::invalid_argument);
    CHECK_THROWS_AS(generate({.kind = "dodecahedron"}, 1), std::invalid_argument);
}

TEST_CASE("stadium junctions are smooth and flats are flat") {
    ConvexCurve st = make_stadium(1.0, 2.0, 1024);
    for (const auto& n : st.nodes()) CHECK_FALSE(n.corner);
    ArclengthChart chart = ArclengthChart::build(st);
    // total turning still 2 pi, all of it on the two semicircles
    CHECK(std::fabs(chart.total_turning() - 2.0 * oracle::pi) <= 1e-9);
    double quarter = chart.total_length() * 0.25;
    (void)quarter;
    int flat_nodes = 0;
    for (std::size_t i = 0; i < chart.node_count(); ++i)
        if (!chart.node_corner(i) && chart.node_kappa(i) < 1e-9) ++flat_nodes;
    CHECK(flat_nodes > 100);
}

TEST_CASE("parabola cap has exactly two corners") {
    ConvexCurve cap = make_parabola_cap(1.0, 512);
    int corners = 0;
    for (const auto& n : cap.nodes()) corners += n.corner ? 1 : 0;
    CHECK(corners == 2);
    CHECK(cap.start_point().x == doctest::Approx(0.0));
    CHECK(cap.start_point().y == doctest::Approx(0.0));
}
