#include "glvortex/equilibria.hpp"
#include "glvortex/errors.hpp"
#include "glvortex/linearized.hpp"
#include "glvortex/scenario.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

namespace {

using namespace glvortex;
using nlohmann::json;

constexpr int exit_config = 2;
constexpr int exit_simulation = 3;

struct SimulateArgs {
    std::string preset;
    std::string config;
    std::string out_dir = "results";
    bool overwrite = false;
    bool all_presets = false;
    bool list_presets = false;
    unsigned threads = 0;

    std::optional<std::string> name;
    std::optional<std::string> domain_kind;
    std::optional<double> R1;
    std::optional<double> R2;
    std::optional<std::string> equation;
    std::vector<std::string> vortices;
    std::optional<std::string> method;
    std::optional<double> dt;
    std::optional<double> rel_tol;
    std::optional<double> abs_tol;
    std::optional<double> t_end;
    std::optional<double> collision_eps;
    std::optional<double> wall_eps;
    std::vector<std::string> outputs;
    bool detect_period = false;
};

json parse_vortex_flag(const std::string& text) {
    std::istringstream in(text);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(in, part, ',')) parts.push_back(part);
    if (parts.size() != 3) throw ConfigError("expected x,y,n but got \"" + text + "\"", "--vortex");
    try {
        std::size_t used = 0;
        const int n = std::stoi(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("degree");
        return {{"x", std::stod(parts[0])}, {"y", std::stod(parts[1])}, {"n", n}};
    } catch (const std::logic_error&) {
        throw ConfigError("cannot read \"" + text + "\" as x,y,n", "--vortex");
    }
}

ScenarioSpec resolve_spec(const SimulateArgs& a) {
    json j = json::object();
    if (!a.preset.empty()) {
        j = json::parse(spec_to_text(preset(a.preset)));
    } else if (!a.config.empty()) {
        j = json::parse(spec_to_text(load_spec(a.config)));
    }
    if (a.name) j["name"] = *a.name;
    if (a.domain_kind) {
        j["domain"]["kind"] = *a.domain_kind;
        if (*a.domain_kind == "disk") j["domain"].erase("R1");
    }
    if (a.R1) j["domain"]["R1"] = *a.R1;
    if (a.R2) j["domain"]["R2"] = *a.R2;
    if (a.equation) j["equation"] = *a.equation;
    if (!a.vortices.empty()) {
        j["vortices"] = json::array();
        for (const auto& v : a.vortices) j["vortices"].push_back(parse_vortex_flag(v));
    }
    if (a.method) j["integrator"]["method"] = *a.method;
    if (a.dt) j["integrator"]["dt"] = *a.dt;
    if (a.rel_tol) j["integrator"]["rel_tol"] = *a.rel_tol;
    if (a.abs_tol) j["integrator"]["abs_tol"] = *a.abs_tol;
    if (a.t_end) j["integrator"]["t_end"] = *a.t_end;
    if (a.collision_eps) j["events"]["collision_eps"] = *a.collision_eps;
    if (a.wall_eps) j["events"]["wall_eps"] = *a.wall_eps;
    if (!a.outputs.empty()) j["outputs"] = a.outputs;
    if (a.detect_period) j["detect_period"] = true;
    return parse_spec(j.dump(), a.config.empty() ? "command line" : a.config);
}

void print_summary(const std::string& name, const ScenarioResult& r) {
    const ScenarioSummary& s = r.summary;
    std::printf("%s: t_final=%.6g samples=%zu alive=%zu pair_annihilations=%zu wall_absorptions=%zu (%s)\n",
                name.c_str(), s.final_time, s.sample_count, s.alive_count, s.pair_annihilations,
                s.wall_absorptions, s.stop_reason.c_str());
    if (s.angular_moment_drift) std::printf("  angular moment drift %.3e\n", *s.angular_moment_drift);
    if (s.period) std::printf("  period %.9g, return error %.3e\n", s.period->period, s.period->return_error);
    for (const auto& f : r.files) std::printf("  wrote %s\n", f.string().c_str());
}

int run_simulate(const SimulateArgs& a) {
    if (a.list_presets) {
        for (const ScenarioSpec& s : presets()) std::printf("%-6s %s\n", s.name.c_str(), s.notes.c_str());
        return 0;
    }
    const OutputOptions out{a.out_dir, a.overwrite};
    if (a.all_presets) {
        int code = 0;
        for (const PresetRun& run : run_all_presets(out, a.threads)) {
            if (run.result) {
                print_summary(run.name, *run.result);
            } else {
                std::fprintf(stderr, "error: %s\n", run.error.c_str());
                code = std::max(code, run.exit_code);
            }
        }
        return code;
    }
    const ScenarioSpec spec = resolve_spec(a);
    print_summary(spec.name, run_scenario(spec, out));
    return 0;
}

int run_stationary(double R1, double R2, int N, bool same_sign) {
    if (same_sign) {
        const StationaryConfig ring = same_sign_ring(R1, R2, N);
        std::printf("same-sign ring: N=%d r0=%.12f residual=%.3e\n", N, std::abs(ring.config[0].position),
                    ring.residual);
        return 0;
    }
    const StationaryConfig st = N == 1 ? analytic_pair(R1, R2) : analytic_chains(R1, R2, N);
    std::printf("%s: N=%d radius=%.12f residual=%.3e\n", std::string(to_string(st.kind)).c_str(), N,
                std::sqrt(R1 * R2), st.residual);
    for (std::size_t j = 0; j < st.config.size(); ++j) {
        const Vortex& v = st.config[j];
        std::printf("  %zu: x=% .12f y=% .12f n=%+d\n", j + 1, v.position.real(), v.position.imag(), v.degree);
    }
    return 0;
}

int run_linearized(double R1, double R2, bool report) {
    const LinearCoeffs c = coeffs(R1, R2);
    std::printf("a1=%.12g a2=%.12g a3=%.12g k=%.12g\n", c.a1, c.a2, c.a3, c.k);
    if (!report) return 0;
    const double rr = R1 * R2;
    std::printf("e1=%.12g e2=%.12g e3=%.12g eta=%.12g\n", c.e1, c.e2, c.e3, c.eta);
    std::printf("period 2pi/k = %.12g\n", c.period());
    std::printf("a3+a2 = %.12g (4(e2-e3)/(R1R2) = %.12g)\n", c.a3 + c.a2, 4 * (c.e2 - c.e3) / rr);
    std::printf("a3-a2 = %.12g ((2/(R1R2))(2e2-4eta/pi) = %.12g)\n", c.a3 - c.a2,
                2 / rr * (2 * c.e2 - 4 * c.eta / std::numbers::pi));
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    std::printf("a1 > 0: %s\na2 > 0: %s\na3+a2 > 0: %s\na3-a2 < 0: %s\n", yn(c.a1 > 0), yn(c.a2 > 0),
                yn(c.a3 + c.a2 > 0), yn(c.a3 - c.a2 < 0));
    std::printf("heat flow: mirror-symmetric mode (x1 = -x2) grows at a3+a2\n");
    std::printf("heat flow: co-moving mode (x1 = x2) %s at a3-a2, y sum grows at 2a1\n",
                c.a3 - c.a2 < 0 ? "decays" : "grows");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vortex dynamics in a disk and an annulus"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Integrate a preset or a scenario file");
    simulate->add_option("--preset", sim.preset, "Built-in scenario name");
    simulate->add_option("--config", sim.config, "Scenario file (JSON)");
    simulate->add_option("--out-dir", sim.out_dir, "Output directory")->capture_default_str();
    simulate->add_flag("--overwrite", sim.overwrite, "Replace existing output files");
    simulate->add_flag("--all-presets", sim.all_presets, "Run every preset concurrently");
    simulate->add_flag("--list-presets", sim.list_presets, "List presets and exit");
    simulate->add_option("--threads", sim.threads, "Worker threads for --all-presets (0: all cores)");
    simulate->add_option("--name", sim.name, "Scenario name (output file stem)");
    simulate->add_option("--domain.kind", sim.domain_kind, "disk or annulus");
    simulate->add_option("--domain.R1", sim.R1, "Inner radius");
    simulate->add_option("--domain.R2", sim.R2, "Outer radius");
    simulate->add_option("--equation", sim.equation, "schrodinger or heat_flow");
    simulate->add_option("--vortex", sim.vortices, "Vortex as x,y,n (repeatable; replaces the list)");
    simulate->add_option("--integrator.method", sim.method, "rk4 or rk45");
    simulate->add_option("--integrator.dt", sim.dt, "Fixed or initial step");
    simulate->add_option("--integrator.rel_tol", sim.rel_tol, "Relative tolerance");
    simulate->add_option("--integrator.abs_tol", sim.abs_tol, "Absolute tolerance");
    simulate->add_option("--integrator.t_end", sim.t_end, "Final time");
    simulate->add_option("--events.collision_eps", sim.collision_eps, "Annihilation distance");
    simulate->add_option("--events.wall_eps", sim.wall_eps, "Wall absorption distance");
    simulate->add_option("--outputs", sim.outputs, "csv, json and/or svg");
    simulate->add_flag("--detect-period", sim.detect_period, "Measure the return time");

    double R1 = 0.5;
    double R2 = 1.5;
    int N = 1;
    bool same_sign = false;
    auto* stationary = app.add_subcommand("stationary", "Stationary configurations in the annulus");
    stationary->add_option("--R1", R1, "Inner radius")->capture_default_str();
    stationary->add_option("--R2", R2, "Outer radius")->capture_default_str();
    stationary->add_option("--N", N, "Number of chains / ring vortices")->capture_default_str();
    stationary->add_flag("--same-sign", same_sign, "Equal-degree ring instead of alternating chains");

    double lR1 = 0.5;
    double lR2 = 1.5;
    bool report = false;
    auto* linearized = app.add_subcommand("linearized", "Linearized pair dynamics coefficients");
    linearized->add_option("--R1", lR1, "Inner radius")->capture_default_str();
    linearized->add_option("--R2", lR2, "Outer radius")->capture_default_str();
    linearized->add_flag("--report", report, "Print identities, sign checks and the period");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    try {
        if (simulate->parsed()) {
            if (!sim.preset.empty() && !sim.config.empty()) {
                throw ConfigError("--preset and --config are mutually exclusive");
            }
            return run_simulate(sim);
        }
        if (stationary->parsed()) return run_stationary(R1, R2, N, same_sign);
        return run_linearized(lR1, lR2, report);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config;
    } catch (const IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return exit_config;
    } catch (const InvalidGeometry& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config;
    } catch (const NoRootError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_simulation;
    } catch (const Error& e) {
        std::fprintf(stderr, "simulation error: %s\n", e.what());
        return exit_simulation;
    }
}
