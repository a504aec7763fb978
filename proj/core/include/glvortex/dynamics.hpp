#pragma once

#include "glvortex/potentials.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace glvortex {

enum class EquationKind { schrodinger, heat_flow };

enum class IntegrationMethod { rk4, rk45 };

std::string_view to_string(EquationKind kind) noexcept;
std::string_view to_string(IntegrationMethod method) noexcept;

struct IntegratorParams {
    IntegrationMethod method = IntegrationMethod::rk45;
    double dt = 1e-3;       // fixed step (rk4) or initial step (rk45)
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double t_end = 1.0;
    double collision_eps = 1e-2;
    double wall_eps = 1e-2;
    std::size_t max_steps = 5'000'000;

    /// Defaults with both event distances set to 1e-2 * R2.
    static IntegratorParams defaults_for(const DomainGeometry& domain);

    /// Throws InvalidGeometry (parameter variant) when any value is non-positive.
    void validate() const;

    friend bool operator==(const IntegratorParams&, const IntegratorParams&) = default;
};

enum class EventKind { pair_annihilation, wall_absorption };

std::string_view to_string(EventKind kind) noexcept;

struct Event {
    double t = 0.0;
    EventKind kind = EventKind::pair_annihilation;
    std::vector<std::size_t> vortices;
};

struct Sample {
    double t = 0.0;
    VortexConfiguration config;
    /// Velocities (x' + i y') leaving this sample; used for dense output.
    std::vector<Complex> velocity;
};

class Trajectory {
public:
    std::vector<Sample> samples;
    std::vector<Event> events;

    const VortexConfiguration& final_configuration() const { return samples.back().config; }
    double final_time() const { return samples.back().t; }

    /// Cubic Hermite interpolation of all positions at time t within the
    /// sampled range.
    std::vector<Complex> positions_at(double t) const;
};

/// Plane velocities x'_j + i y'_j of every vortex. With K_j = W~'(z_j):
///   Schrodinger: x' = 2 Re K, y' = -2 Im K
///   heat flow:   x' = -2 n Im K, y' = -2 n Re K
/// Annihilated vortices get zero velocity.
std::vector<Complex> rhs(EquationKind equation, const VortexConfiguration& config);

/// Integrates until params.t_end or until no vortex is left alive.
///
/// Opposite-degree pairs closer than collision_eps annihilate; vortices within
/// wall_eps of a boundary circle are absorbed. Event times are located on the
/// step's dense output to 1e-6. Throws StepSizeUnderflow when the step
/// controller stalls.
Trajectory integrate(EquationKind equation, const VortexConfiguration& initial, const IntegratorParams& params);

/// sum_j n_j |z_j|^2 over living vortices.
double angular_moment(const VortexConfiguration& config);

}  // namespace glvortex
