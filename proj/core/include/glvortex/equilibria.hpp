#pragma once

#include "glvortex/potentials.hpp"

#include <string_view>

namespace glvortex {

enum class StationaryKind { analytic_pair, analytic_chains, same_sign_ring, numerical };

std::string_view to_string(StationaryKind kind) noexcept;

struct StationaryConfig {
    VortexConfiguration config;
    /// max_j |W~'(z_j)| over the full configuration.
    double residual = 0.0;
    StationaryKind kind = StationaryKind::numerical;
    /// Newton iterations used (numerical kind only).
    int iterations = 0;
};

/// Vortex at (sqrt(R1 R2), 0) with degree +1 and antivortex at
/// (-sqrt(R1 R2), 0) with degree -1.
StationaryConfig analytic_pair(double R1, double R2);

/// 2N vortices z_k = sqrt(R1 R2) exp(i pi k / N), k = 0..2N-1, with
/// alternating degrees starting at +1.
StationaryConfig analytic_chains(double R1, double R2, int N);

/// Velocity of the first vortex of the alternating chain family at radius r,
/// on the reduced lattice omega1 = pi / N (two vortices per sector).
Complex chain_velocity_conj(double R1, double R2, int N, double r);

/// Radius of the stationary ring of N equal-degree vortices with uniform
/// angles. Throws NoRootError when no sign change is found.
double same_sign_radius(double R1, double R2, int N);

/// coth(N s) - 4 sum_t q^{2t} / (1 - q^{2t}) sinh(2 t N s), s = ln(r / R2),
/// with q = (R1 / R2)^N the nome of the N-fold lattice. Vanishes at the ring
/// radius; the terms decay like (R1 / r)^{2 N t}.
double same_sign_balance(double R1, double R2, int N, double r);

/// Ring of N degree +1 vortices at same_sign_radius, first vortex on the
/// positive real axis.
StationaryConfig same_sign_ring(double R1, double R2, int N);

/// Damped Gauss-Newton on W~'(z_j) = 0 for all living vortices, with a
/// central-difference Jacobian (step 1e-6) and the angle of the first vortex
/// held fixed. Converges when the residual drops below 1e-10; throws
/// NonConvergence after 100 iterations.
StationaryConfig find_stationary(const VortexConfiguration& initial_guess);

}  // namespace glvortex
