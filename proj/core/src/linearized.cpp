#include "glvortex/linearized.hpp"

#include "glvortex/errors.hpp"

#include <cmath>
#include <numbers>

namespace glvortex {

double LinearCoeffs::period() const { return 2.0 * std::numbers::pi / k; }

LinearCoeffs coeffs(double R1, double R2) {
    const EllipticContext ctx = make_context(R1, R2, 1);
    LinearCoeffs c;
    c.R1 = R1;
    c.R2 = R2;
    c.e1 = ctx.e1().real();
    c.e2 = ctx.e2().real();
    c.e3 = ctx.e3().real();
    c.eta = ctx.eta().real();
    const double scale = 2.0 / (R1 * R2);
    const double eta_term = 2.0 * c.eta / std::numbers::pi;
    c.a1 = scale * (c.e1 - c.e2);
    c.a2 = scale * (-c.e3 + eta_term);
    c.a3 = scale * (c.e2 - c.e1 - 2.0 * c.e3 - eta_term);
    const double k2 = 2.0 * c.a1 * (c.a2 + c.a3);
    if (!(k2 > 0.0)) throw InvalidGeometry("linearized frequency is not real for this annulus");
    c.k = std::sqrt(k2);
    return c;
}

Matrix4 linear_matrix(const LinearCoeffs& c, EquationKind equation) {
    if (equation == EquationKind::schrodinger) {
        return {{{0.0, 0.0, -c.a1, -c.a1},
                 {0.0, 0.0, c.a1, c.a1},
                 {c.a3, -c.a2, 0.0, 0.0},
                 {c.a2, -c.a3, 0.0, 0.0}}};
    }
    return {{{c.a3, -c.a2, 0.0, 0.0},
             {-c.a2, c.a3, 0.0, 0.0},
             {0.0, 0.0, c.a1, c.a1},
             {0.0, 0.0, c.a1, c.a1}}};
}

Displacements heat_flow_solution(const LinearCoeffs& c, double d1, double d2, double e1, double e2, double t) {
    const double C1 = 0.5 * (d1 + d2);
    const double C2 = 0.5 * (d1 - d2);
    const double slow = C1 * std::exp((c.a3 - c.a2) * t);
    const double fast = C2 * std::exp((c.a3 + c.a2) * t);
    const double grow = (e1 + e2) * std::exp(2.0 * c.a1 * t);
    return {slow + fast, slow - fast, 0.5 * (grow + (e1 - e2)), 0.5 * (grow - (e1 - e2))};
}

Displacements schrodinger_solution(const LinearCoeffs& c, double d1, double d2, double e1, double e2, double t) {
    const double S = d1 + d2;
    const double D0 = d1 - d2;
    const double P0 = e1 + e2;
    const double Q0 = e1 - e2;
    const double Ddot0 = -2.0 * c.a1 * P0;
    const double ck = std::cos(c.k * t);
    const double sk = std::sin(c.k * t);
    const double D = D0 * ck + Ddot0 / c.k * sk;
    const double P = P0 + (c.a3 + c.a2) * (D0 * sk / c.k + Ddot0 * (1.0 - ck) / (c.k * c.k));
    const double Q = Q0 + (c.a3 - c.a2) * S * t;
    return {0.5 * (S + D), 0.5 * (S - D), 0.5 * (P + Q), 0.5 * (P - Q)};
}

double schrodinger_d2(const LinearCoeffs& c, double e1, double e2) { return -c.a1 * (e1 + e2) / c.k; }

}  // namespace glvortex
