// Exception types thrown by curve construction and the measure/restriction ops.
#pragma once

#include <stdexcept>
#include <string>

namespace convrest {

struct CurveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Vertex ring has a reflex vertex, or tangent data contradicts the vertex order.
struct NotConvex : CurveError {
    using CurveError::CurveError;
};

// Fewer than 3 distinct vertices, or zero enclosed area.
struct DegenerateCurve : CurveError {
    using CurveError::CurveError;
};

// The base point x0 does not lie strictly inside the curve.
struct BasePointOutside : CurveError {
    using CurveError::CurveError;
};

// Parameter or interval outside the chart's domain [0, length].
struct ParameterOutOfRange : CurveError {
    using CurveError::CurveError;
};

// Tangent-dependent quantity requested at a corner node.
struct SingularPoint : CurveError {
    using CurveError::CurveError;
};

// Interval turning exceeds the pi/2 bound required by rectangle constructions.
struct TurningTooLarge : CurveError {
    using CurveError::CurveError;
};

// Covering refinement hit its depth limit before satisfying the constraints.
struct ResolutionExhausted : CurveError {
    using CurveError::CurveError;
};

// Oscillatory quadrature requested beyond the chart's resolvable frequency.
struct UnderResolved : CurveError {
    using CurveError::CurveError;
};

// Exponent outside the admissible restriction range [1, 4/3).
struct ExponentOutOfRange : CurveError {
    using CurveError::CurveError;
};

// Adaptive quadrature failed to converge under refinement.
struct QuadratureFailure : CurveError {
    using CurveError::CurveError;
};

}  // namespace convrest
