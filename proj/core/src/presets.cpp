#include "glvortex/scenario.hpp"

#include "glvortex/errors.hpp"

#include <cmath>
#include <numbers>

namespace glvortex {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double ring_R1 = 0.5;
constexpr double ring_R2 = 1.5;
constexpr const char* ring_note = "R1 = 0.5, R2 = 1.5 chosen by default for the annulus";

// n vortices on a circle of radius r starting at angle phase, degrees from
// `degree(k)`.
template <class Degree>
std::vector<Vortex> circle(int n, double r, double phase, Degree degree) {
    std::vector<Vortex> vs;
    for (int k = 0; k < n; ++k) vs.push_back({std::polar(r, phase + 2.0 * pi * k / n), degree(k)});
    return vs;
}

int alternating(int k) { return k % 2 == 0 ? 1 : -1; }
int positive(int) { return 1; }

ScenarioSpec make(std::string name, DomainGeometry domain, EquationKind eq, std::vector<Vortex> vs, double t_end,
                  std::string notes, bool detect_period = false) {
    ScenarioSpec s;
    s.name = std::move(name);
    s.domain = domain;
    s.equation = eq;
    s.vortices = std::move(vs);
    s.params = IntegratorParams::defaults_for(domain);
    s.params.t_end = t_end;
    if (eq == EquationKind::schrodinger) {
        // Conservative runs are judged on closed orbits and constant radii.
        s.params.rel_tol = 1e-10;
        s.params.abs_tol = 1e-12;
    }
    s.outputs = {OutputKind::csv, OutputKind::json, OutputKind::svg};
    s.detect_period = detect_period;
    s.notes = std::move(notes);
    return s;
}

std::vector<ScenarioSpec> build() {
    const DomainGeometry disk = DomainGeometry::disk(1.0);
    const DomainGeometry ring = DomainGeometry::annulus(ring_R1, ring_R2);
    const auto S = EquationKind::schrodinger;
    const auto H = EquationKind::heat_flow;
    const double r0 = std::sqrt(ring_R1 * ring_R2);
    std::vector<ScenarioSpec> p;

    p.push_back(make("fig1a", disk, S, {{{0.3, 0.0}, 1}, {{-0.3, 0.0}, -1}}, 8.0,
                     "disk, vortex-antivortex pair symmetric about the y axis: closed orbits", true));
    p.push_back(make("fig1b", disk, S, circle(4, 0.5, 0.0, alternating), 8.0,
                     "disk, four alternating vortices on one circle: symmetric closed orbits"));
    p.push_back(make("fig2a", disk, S, {{{0.1, 0.0}, 1}, {{0.0, 0.8}, -1}}, 8.0,
                     "disk, one vortex near the centre and one near the wall"));
    p.push_back(make("fig2b", disk, S, circle(5, 0.3, 0.0, positive), 8.0,
                     "disk, five equal vortices on one circle: motion along the circle"));
    p.push_back(make("fig3a", disk, S, circle(3, 0.5, pi / 2, alternating), 8.0,
                     "disk, three alternating vortices on one circle"));
    p.push_back(make("fig3b", disk, S, circle(5, 0.5, 0.0, alternating), 8.0,
                     "disk, five alternating vortices on one circle"));

    p.push_back(make("fig4a", disk, H,
                     {{{0.1, 0.4}, 1}, {{-0.1, 0.4}, -1}, {{0.1, -0.4}, -1}, {{-0.1, -0.4}, 1}}, 5.0,
                     "disk, two mirrored dipoles: each pair annihilates"));
    {
        std::vector<Vortex> vs;
        for (int k = 0; k < 3; ++k) {
            const double a = 2.0 * pi * k / 3;
            vs.push_back({std::polar(0.5, a - 0.1), 1});
            vs.push_back({std::polar(0.5, a + 0.1), -1});
        }
        p.push_back(make("fig4b", disk, H, std::move(vs), 5.0, "disk, three close pairs: nearest neighbours annihilate"));
    }
    p.push_back(make("fig5a", disk, H, {{{0.2, 0.0}, 1}, {{0.0, 0.2}, -1}, {{-0.5, -0.3}, 1}}, 5.0,
                     "disk, odd number of mixed vortices: one pair annihilates, the rest reach the wall"));
    p.push_back(make("fig5b", disk, H, circle(4, 0.5, 0.3, positive), 5.0,
                     "disk, equal vortices: all absorbed at the wall"));

    p.push_back(make("fig6a", ring, H, circle(4, 1.2, pi / 4, alternating), 5.0,
                     std::string(ring_note) + "; alternating vortices far apart: absorbed at the boundary"));
    p.push_back(make("fig6b", ring, H,
                     {{std::polar(r0, 0.0), 1}, {std::polar(r0, 0.15), -1}, {std::polar(r0, pi), 1},
                      {std::polar(r0, pi + 0.15), -1}},
                     5.0, std::string(ring_note) + "; alternating vortices close together: pairs annihilate"));
    p.push_back(make("fig7a", ring, S, {{{r0 + 0.01, 0.0}, 1}, {{-r0 - 0.01, 0.0}, -1}}, 30.0,
                     std::string(ring_note) + "; pair displaced symmetrically from the stationary points", true));
    {
        std::vector<Vortex> vs = circle(6, r0 + 0.02, 0.0, alternating);
        p.push_back(make("fig7b", ring, S, std::move(vs), 30.0,
                         std::string(ring_note) + "; six alternating vortices displaced from the stationary chain"));
    }
    p.push_back(make("fig8a", ring, S,
                     {{{0.8, 0.1}, 1}, {{-0.2, 0.9}, -1}, {{-0.9, -0.3}, 1}, {{0.1, -1.1}, -1}, {{1.1, -0.6}, 1}},
                     10.0, std::string(ring_note) + "; five mixed vortices at arbitrary positions"));
    p.push_back(make("fig8b", ring, S, circle(5, 1.0, 0.0, alternating), 10.0,
                     std::string(ring_note) + "; five alternating vortices on one circle"));
    p.push_back(make("fig9a", ring, S, circle(3, 1.0, 0.0, positive), 10.0,
                     std::string(ring_note) + "; three equal vortices on one circle"));
    p.push_back(make("fig9b", ring, S, {{{0.8, 0.0}, 1}, {{-0.5, 0.9}, 1}, {{-0.6, -1.1}, 1}}, 10.0,
                     std::string(ring_note) + "; three equal vortices at uneven positions"));
    return p;
}

}  // namespace

const std::vector<ScenarioSpec>& presets() {
    static const std::vector<ScenarioSpec> all = build();
    return all;
}

const ScenarioSpec& preset(std::string_view name) {
    for (const ScenarioSpec& s : presets()) {
        if (s.name == name) return s;
    }
    throw ConfigError("unknown preset \"" + std::string(name) + "\"", "preset");
}

}  // namespace glvortex
