// Measures on the chart parameter domain: nodal density plus atoms.
#pragma once

#include <utility>
#include <vector>

#include "convrest/chart.hpp"

namespace convrest {

// A Borel measure on [0, L] represented by a density sampled at the chart
// nodes (integrated cell-by-cell with the trapezoid rule, linear in between)
// and a finite list of atoms. Houses sigma (density kappa, atoms at corners)
// and the affine arclength measure nu (density kappa^{1/3}, no atoms).
struct CurveMeasure {
    std::vector<double> t;        // node parameters, size N+1 (wrap included)
    std::vector<double> density;  // nonnegative samples, same size
    std::vector<std::pair<double, double>> atoms;  // (position, mass > 0), sorted
    double snap = 0.0;

    double density_at(double tau) const;
    // Mass of an interval; endpoint kinds decide whether atoms sitting
    // exactly on an endpoint are counted.
    double mass(Interval iv, Endpoint lo_kind = Endpoint::Closed,
                Endpoint hi_kind = Endpoint::Closed) const;
    double total() const;
};

CurveMeasure sigma_measure(const ArclengthChart& chart);
CurveMeasure nu_measure(const ArclengthChart& chart);

// Integral of kappa^{1/3} over the interval (nu has no atoms, so endpoint
// kinds are irrelevant).
double nu_mass(const ArclengthChart& chart, Interval iv);

}  // namespace convrest
