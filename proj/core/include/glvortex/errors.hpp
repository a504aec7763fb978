#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace glvortex {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidGeometry : public Error {
public:
    using Error::Error;
};

/// An elliptic function was evaluated at a lattice point.
class PoleError : public Error {
public:
    using Error::Error;
};

/// Two living vortices closer than the coincidence threshold.
class CoincidentVortices : public Error {
public:
    using Error::Error;
};

/// A field quantity was requested at a vortex position or outside the domain.
class SingularPoint : public Error {
public:
    using Error::Error;
};

class StepSizeUnderflow : public Error {
public:
    StepSizeUnderflow(double t, double min_pair_distance)
        : Error("step size underflow at t = " + std::to_string(t) +
                " (minimum pair distance " + std::to_string(min_pair_distance) + ")"),
          time(t),
          min_distance(min_pair_distance) {}

    double time;
    double min_distance;
};

class NoRootError : public Error {
public:
    using Error::Error;
};

class NonConvergence : public Error {
public:
    NonConvergence(std::size_t iterations, double best)
        : Error("no convergence after " + std::to_string(iterations) +
                " iterations (best residual " + std::to_string(best) + ")"),
          best_residual(best) {}

    double best_residual;
};

/// Malformed scenario configuration; `key` names the offending entry when known.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what, std::string key_path = {})
        : Error(key_path.empty() ? what : key_path + ": " + what), key(std::move(key_path)) {}

    std::string key;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Integration failure inside a named scenario.
class SimulationError : public Error {
public:
    SimulationError(const std::string& scenario, const std::string& what)
        : Error("scenario " + scenario + ": " + what), scenario_name(scenario) {}

    std::string scenario_name;
};

}  // namespace glvortex
