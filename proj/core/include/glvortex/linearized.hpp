#pragma once

#include "glvortex/dynamics.hpp"

#include <array>

namespace glvortex {

/// Coefficients of the linearized pair dynamics about (+-sqrt(R1 R2), 0),
/// from the single-chain lattice values e1, e2, e3 and eta:
///   a1 = 2 (e1 - e2) / (R1 R2)
///   a2 = 2 (-e3 + 2 eta / pi) / (R1 R2)
///   a3 = 2 (e2 - e1 - 2 e3 - 2 eta / pi) / (R1 R2)
///   k  = sqrt(2 a1 (a2 + a3))
struct LinearCoeffs {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
    double k = 0.0;
    double R1 = 0.0;
    double R2 = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;
    double e3 = 0.0;
    double eta = 0.0;

    double period() const;
};

LinearCoeffs coeffs(double R1, double R2);

/// Displacements from the stationary points: vortex (+1) at x1, y1 and
/// antivortex (-1) at x2, y2.
struct Displacements {
    double x1 = 0.0;
    double x2 = 0.0;
    double y1 = 0.0;
    double y2 = 0.0;

    std::array<double, 4> as_array() const { return {x1, x2, y1, y2}; }
};

using Matrix4 = std::array<std::array<double, 4>, 4>;

/// Matrix M of the linear system d/dt (x1, x2, y1, y2) = M (x1, x2, y1, y2).
///   Schrodinger: x1' = -a1 (y1 + y2), x2' = a1 (y1 + y2),
///                y1' = a3 x1 - a2 x2,  y2' = a2 x1 - a3 x2
///   heat flow:   x1' = a3 x1 - a2 x2,  x2' = -a2 x1 + a3 x2,
///                y1' = y2' = a1 (y1 + y2)
Matrix4 linear_matrix(const LinearCoeffs& c, EquationKind equation);

/// Closed-form solution of the heat-flow system with x(0) = (d1, d2),
/// y(0) = (e1, e2).
Displacements heat_flow_solution(const LinearCoeffs& c, double d1, double d2, double e1, double e2, double t);

/// Closed-form solution of the Schrodinger system with x(0) = (d1, d2),
/// y(0) = (e1, e2), through S = x1 + x2 (constant), D = x1 - x2
/// (harmonic with frequency k), P = y1 + y2 and Q = y1 - y2.
Displacements schrodinger_solution(const LinearCoeffs& c, double d1, double d2, double e1, double e2, double t);

/// Amplitude -a1 (e1 + e2) / k of the sin(kt) term driven by the initial
/// y displacements.
double schrodinger_d2(const LinearCoeffs& c, double e1, double e2);

}  // namespace glvortex
