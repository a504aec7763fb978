#include "glvortex/scenario.hpp"

#include "glvortex/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace glvortex {

std::string_view to_string(OutputKind kind) noexcept {
    switch (kind) {
        case OutputKind::csv: return "csv";
        case OutputKind::json: return "json";
        case OutputKind::svg: break;
    }
    return "svg";
}

VortexConfiguration ScenarioSpec::initial_configuration() const { return VortexConfiguration(domain, vortices); }

namespace {

double return_distance(const std::vector<Complex>& start, const std::vector<Complex>& now) {
    double d = 0.0;
    for (std::size_t j = 0; j < start.size(); ++j) d = std::max(d, std::abs(now[j] - start[j]));
    return d;
}

std::vector<Complex> positions_of(const VortexConfiguration& c) {
    std::vector<Complex> out;
    out.reserve(c.size());
    for (const Vortex& v : c.vortices()) out.push_back(v.position);
    return out;
}

}  // namespace

std::optional<double> detect_return_time(const Trajectory& trajectory, double scale) {
    const auto& s = trajectory.samples;
    if (!trajectory.events.empty() || s.size() < 3) return std::nullopt;
    const double leave = 1e-2 * scale;
    const std::vector<Complex> start = positions_of(s.front().config);
    std::vector<double> d(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) d[i] = return_distance(start, positions_of(s[i].config));

    bool left = false;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        if (d[i] > leave) left = true;
        if (!left || d[i] > d[i - 1] || d[i] > d[i + 1]) continue;
        // Golden-section search for the minimum on the bracketing samples.
        auto f = [&](double t) { return return_distance(start, trajectory.positions_at(t)); };
        constexpr double g = 0.6180339887498949;
        double a = s[i - 1].t;
        double b = s[i + 1].t;
        double c = b - g * (b - a);
        double e = a + g * (b - a);
        double fc = f(c);
        double fe = f(e);
        for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, b); ++it) {
            if (fc < fe) {
                b = e;
                e = c;
                fe = fc;
                c = b - g * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = e;
                fc = fe;
                e = a + g * (b - a);
                fe = f(e);
            }
        }
        const double t = 0.5 * (a + b);
        if (f(t) < leave) return t;
    }
    return std::nullopt;
}

ScenarioSummary summarize(const ScenarioSpec& spec, const Trajectory& trajectory) {
    ScenarioSummary sum;
    sum.final_time = trajectory.final_time();
    sum.sample_count = trajectory.samples.size();
    sum.alive_count = trajectory.final_configuration().alive_count();
    for (const Event& e : trajectory.events) {
        (e.kind == EventKind::pair_annihilation ? sum.pair_annihilations : sum.wall_absorptions) += 1;
    }
    if (spec.equation == EquationKind::schrodinger) {
        double drift = 0.0;
        double reference = angular_moment(trajectory.samples.front().config);
        std::size_t alive = trajectory.samples.front().config.alive_count();
        for (const Sample& s : trajectory.samples) {
            const double m = angular_moment(s.config);
            if (s.config.alive_count() != alive) {
                alive = s.config.alive_count();
                reference = m;
            }
            drift = std::max(drift, std::abs(m - reference));
        }
        sum.angular_moment_drift = drift;
    }
    if (sum.alive_count == 0) {
        sum.stop_reason = "no vortices left alive";
    } else {
        sum.stop_reason = "reached t_end";
    }
    return sum;
}

ScenarioResult run_scenario(const ScenarioSpec& spec, const std::optional<OutputOptions>& options) {
    const VortexConfiguration initial = spec.initial_configuration();
    spec.params.validate();
    if (options && !options->overwrite) {
        for (const auto& p : output_paths(spec, options->out_dir)) {
            if (std::filesystem::exists(p)) {
                throw IoError("refusing to overwrite " + p.string() + " (pass --overwrite)");
            }
        }
    }

    ScenarioResult result;
    try {
        result.trajectory = integrate(spec.equation, initial, spec.params);
        result.summary = summarize(spec, result.trajectory);
        if (spec.detect_period) {
            if (const auto t = detect_return_time(result.trajectory, spec.domain.R2())) {
                IntegratorParams p = spec.params;
                p.t_end = *t;
                const Trajectory again = integrate(spec.equation, initial, p);
                const double err =
                    return_distance(positions_of(initial), positions_of(again.final_configuration()));
                result.summary.period = PeriodEstimate{*t, err};
            }
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw SimulationError(spec.name, e.what());
    }
    if (options) result.files = write_outputs(result.trajectory, spec, result.summary, *options);
    return result;
}

std::vector<PresetRun> run_all_presets(const std::optional<OutputOptions>& options, unsigned threads) {
    const auto& all = presets();
    std::vector<PresetRun> runs(all.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(all.size()));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < all.size(); i = next++) {
            PresetRun& run = runs[i];
            run.name = all[i].name;
            try {
                run.result = run_scenario(all[i], options);
            } catch (const SimulationError& e) {
                run.error = e.what();
                run.exit_code = 3;
            } catch (const Error& e) {
                run.error = e.what();
                run.exit_code = 2;
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    return runs;
}

}  // namespace glvortex
