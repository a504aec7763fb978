#include "glvortex/dynamics.hpp"
#include "glvortex/elliptic.hpp"
#include "glvortex/equilibria.hpp"
#include "glvortex/potentials.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

using namespace glvortex;

namespace {

VortexConfiguration annulus_ring(int n) {
    std::vector<Vortex> vs;
    for (int k = 0; k < n; ++k) {
        vs.push_back({std::polar(0.9 + 0.05 * (k % 3), 2 * std::numbers::pi * k / n), k % 2 ? -1 : 1});
    }
    return VortexConfiguration(DomainGeometry::annulus(0.5, 1.5), vs);
}

void BM_Zeta(benchmark::State& state) {
    const EllipticContext ctx = make_context(0.5, 1.5, 1);
    Complex z{0.7, 0.3};
    for (auto _ : state) {
        benchmark::DoNotOptimize(ctx.zeta(z));
        z += Complex(1e-9, 0.0);
    }
}
BENCHMARK(BM_Zeta);

void BM_MakeContext(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(make_context(0.5, 1.5, 2));
}
BENCHMARK(BM_MakeContext);

void BM_AnnulusVelocities(benchmark::State& state) {
    const VortexConfiguration c = annulus_ring(int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(vortex_velocities_conj(c));
}
BENCHMARK(BM_AnnulusVelocities)->Arg(2)->Arg(6)->Arg(12);

void BM_DiskRhs(benchmark::State& state) {
    const VortexConfiguration c(DomainGeometry::disk(1.0), {{{0.3, 0.1}, 1}, {{-0.2, -0.3}, -1}, {{0.1, 0.6}, 1}});
    for (auto _ : state) benchmark::DoNotOptimize(rhs(EquationKind::schrodinger, c));
}
BENCHMARK(BM_DiskRhs);

void BM_IntegratePair(benchmark::State& state) {
    const StationaryConfig s = analytic_pair(0.5, 1.5);
    std::vector<Vortex> vs(s.config.vortices().begin(), s.config.vortices().end());
    vs[0].position += 0.01;
    const VortexConfiguration c = s.config.with_vortices(vs);
    IntegratorParams p;
    p.t_end = 5.0;
    for (auto _ : state) benchmark::DoNotOptimize(integrate(EquationKind::schrodinger, c, p));
}
BENCHMARK(BM_IntegratePair)->Unit(benchmark::kMillisecond);

void BM_SameSignRadius(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(same_sign_radius(0.5, 1.5, 2));
}
BENCHMARK(BM_SameSignRadius);

}  // namespace

BENCHMARK_MAIN();
