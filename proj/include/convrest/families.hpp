// Curve family generators spanning smooth, flat, and corner behavior.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "convrest/convex_curve.hpp"

namespace convrest {

struct CurveFamilySpec {
    std::string kind;  // circle | ellipse | superellipse | regular_ngon | stadium |
                       // random_convex_polygon | parabola_cap | file
    std::string name;  // report id; defaults to a parameter summary
    double radius = 1.0;
    double a = 2.0, b = 1.0;   // ellipse / superellipse semi-axes
    double exponent = 4.0;     // superellipse exponent
    double flat = 2.0;         // stadium flat length
    double halfwidth = 1.0;    // parabola cap half-width
    int nodes = 4096;
    int ngon = 64;
    int points = 20;           // random polygon: number of sampled points
    std::string path;          // file kind

    std::string id() const;
};

ConvexCurve make_circle(double radius, int nodes);
ConvexCurve make_ellipse(double a, double b, int nodes);
ConvexCurve make_superellipse(double exponent, double a, double b, int nodes);
ConvexCurve make_regular_ngon(int sides, double radius);
ConvexCurve make_stadium(double radius, double flat, int nodes);
ConvexCurve make_random_convex_polygon(int points, std::uint64_t seed);
ConvexCurve make_parabola_cap(double halfwidth, int nodes);

ConvexCurve generate(const CurveFamilySpec& spec, std::uint64_t seed);

struct NamedCurve {
    std::string id;
    ConvexCurve curve;
};

std::vector<NamedCurve> generate_family(const std::vector<CurveFamilySpec>& specs,
                                        std::uint64_t seed);

}  // namespace convrest
