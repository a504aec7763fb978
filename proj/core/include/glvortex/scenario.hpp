#pragma once

#include "glvortex/dynamics.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace glvortex {

enum class OutputKind { csv, json, svg };

std::string_view to_string(OutputKind kind) noexcept;

struct ScenarioSpec {
    std::string name;
    DomainGeometry domain = DomainGeometry::disk(1.0);
    EquationKind equation = EquationKind::schrodinger;
    std::vector<Vortex> vortices;
    IntegratorParams params;
    std::vector<OutputKind> outputs{OutputKind::csv};
    /// Measure the orbit period (return to the initial positions) after the run.
    bool detect_period = false;
    /// Free text carried into the JSON metadata.
    std::string notes;

    /// Throws InvalidGeometry / CoincidentVortices for an invalid setup.
    VortexConfiguration initial_configuration() const;

    friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

/// Parses the JSON scenario format:
///
///   {
///     "name": "run",
///     "domain": {"kind": "annulus", "R1": 0.5, "R2": 1.5},
///     "equation": "schrodinger",
///     "vortices": [{"x": 0.8, "y": 0.0, "n": 1}],
///     "integrator": {"method": "rk45", "dt": 1e-3, "rel_tol": 1e-8, "abs_tol": 1e-10, "t_end": 10},
///     "events": {"collision_eps": 0.015, "wall_eps": 0.015},
///     "outputs": ["csv", "json", "svg"]
///   }
///
/// "integrator", "events" and "outputs" are optional; missing event distances
/// default to 1e-2 * R2. Unknown keys are rejected. Errors are ConfigError
/// carrying the key path or the line and column of a syntax error.
ScenarioSpec parse_spec(std::string_view text, std::string_view source = "<string>");

ScenarioSpec load_spec(const std::filesystem::path& path);

/// Serializes to the format read by parse_spec; parse_spec(spec_to_text(s)) == s.
std::string spec_to_text(const ScenarioSpec& spec);

struct PeriodEstimate {
    double period = 0.0;
    /// max_j |z_j(period) - z_j(0)| from a fresh integration to `period`.
    double return_error = 0.0;
};

/// First time after the vortices have left their start (by more than
/// 1e-2 * scale) at which max_j |z_j(t) - z_j(0)| has a local minimum below
/// that distance. Minima of the sampled distance are refined on the dense
/// output before the threshold is applied. Empty when no return was seen or
/// when any vortex died.
std::optional<double> detect_return_time(const Trajectory& trajectory, double scale);

struct ScenarioSummary {
    double final_time = 0.0;
    std::size_t sample_count = 0;
    std::size_t alive_count = 0;
    std::size_t pair_annihilations = 0;
    std::size_t wall_absorptions = 0;
    /// max |M(t) - M(t_event)| of the angular moment between events (Schrodinger only).
    std::optional<double> angular_moment_drift;
    std::optional<PeriodEstimate> period;
    std::string stop_reason;
};

struct OutputOptions {
    std::filesystem::path out_dir;
    bool overwrite = false;
};

struct ScenarioResult {
    Trajectory trajectory;
    ScenarioSummary summary;
    std::vector<std::filesystem::path> files;
};

/// `t,x1,y1,alive1,x2,...` with one row per sample, numbers printed with 17
/// significant digits.
std::string trajectory_csv(const Trajectory& trajectory);

/// `t,kind,indices` with 1-based indices joined by ';'.
std::string events_csv(const Trajectory& trajectory);

std::string result_json(const ScenarioSpec& spec, const Trajectory& trajectory, const ScenarioSummary& summary);

/// 800x800 self-contained SVG: boundary circles and one polyline per vortex;
/// the point where a vortex dies gets a dashed ring.
std::string trajectory_svg(const ScenarioSpec& spec, const Trajectory& trajectory);

/// Paths written for a scenario: <name>.csv and <name>_events.csv for csv,
/// <name>.json, <name>.svg.
std::vector<std::filesystem::path> output_paths(const ScenarioSpec& spec, const std::filesystem::path& out_dir);

/// Writes the requested outputs. Throws IoError when a target exists and
/// overwrite is false (before anything is written) or on write failure.
std::vector<std::filesystem::path> write_outputs(const Trajectory& trajectory, const ScenarioSpec& spec,
                                                 const ScenarioSummary& summary, const OutputOptions& options);

ScenarioSummary summarize(const ScenarioSpec& spec, const Trajectory& trajectory);

/// Integrates, summarizes and, when `options` is given, writes outputs.
/// Simulation failures are rethrown as SimulationError naming the scenario.
ScenarioResult run_scenario(const ScenarioSpec& spec, const std::optional<OutputOptions>& options = std::nullopt);

/// Built-in scenarios fig1a ... fig9b. Annulus presets use R1 = 0.5, R2 = 1.5.
const std::vector<ScenarioSpec>& presets();

/// Throws ConfigError for an unknown name.
const ScenarioSpec& preset(std::string_view name);

struct PresetRun {
    std::string name;
    std::optional<ScenarioResult> result;
    std::string error;
    /// 0 success, 2 configuration or I/O error, 3 simulation failure.
    int exit_code = 0;
};

/// Runs every preset on up to `threads` worker threads (0: hardware
/// concurrency). Results are in preset order.
std::vector<PresetRun> run_all_presets(const std::optional<OutputOptions>& options, unsigned threads = 0);

}  // namespace glvortex
