#include "glvortex/errors.hpp"
#include "glvortex/potentials.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace glvortex;

namespace {

constexpr double pi = std::numbers::pi;
const Complex I{0.0, 1.0};

VortexConfiguration disk(std::vector<Vortex> vs, double R2 = 1.0) {
    return VortexConfiguration(DomainGeometry::disk(R2), std::move(vs));
}

VortexConfiguration ring(std::vector<Vortex> vs, double R1 = 0.5, double R2 = 1.5) {
    return VortexConfiguration(DomainGeometry::annulus(R1, R2), std::move(vs));
}

// Random well-separated vortices with radii in (lo, hi).
std::vector<Vortex> random_vortices(std::mt19937& rng, int n, double lo, double hi) {
    std::uniform_real_distribution<double> r(lo, hi);
    std::uniform_real_distribution<double> a(0.0, 2 * pi);
    std::vector<Vortex> vs;
    while (int(vs.size()) < n) {
        const Complex z = std::polar(r(rng), a(rng));
        bool ok = true;
        for (const Vortex& v : vs) ok = ok && std::abs(v.position - z) > 0.15;
        if (ok) vs.push_back({z, vs.size() % 2 == 0 ? 1 : -1});
    }
    return vs;
}

// Independent image-sum reference for the disk: vortex at z_k and image of
// opposite degree at R2^2 / conj(z_k), velocity sum n / (i (z - z_k)).
Complex disk_reference(const std::vector<Vortex>& vs, std::size_t j, double R2) {
    Complex w{0.0, 0.0};
    for (std::size_t k = 0; k < vs.size(); ++k) {
        const Complex zk = vs[k].position;
        const Complex img = R2 * R2 / std::conj(zk);
        if (k != j) w += -I * double(vs[k].degree) / (vs[j].position - zk);
        w -= -I * double(vs[k].degree) / (vs[j].position - img);
    }
    return w;
}

}  // namespace

TEST_CASE("domain geometry") {
    const DomainGeometry d = DomainGeometry::disk(2.0);
    CHECK(d.contains({1.9, 0.0}));
    CHECK_FALSE(d.contains({0.0, 2.0}));
    CHECK(d.wall_distance({0.5, 0.0}) == doctest::Approx(1.5));
    const DomainGeometry a = DomainGeometry::annulus(0.5, 1.5);
    CHECK_FALSE(a.contains({0.1, 0.1}));
    CHECK(a.wall_distance({0.0, 0.6}) == doctest::Approx(0.1));
    CHECK(a.wall_distance({1.4, 0.0}) == doctest::Approx(0.1));
    CHECK_THROWS_AS(DomainGeometry::disk(-1.0), InvalidGeometry);
    CHECK_THROWS_AS(DomainGeometry::annulus(1.0, 1.0), InvalidGeometry);
}

TEST_CASE("configuration validation") {
    CHECK_THROWS_AS(disk({{{0.2, 0.0}, 2}}), InvalidGeometry);
    CHECK_THROWS_AS(disk({{{1.2, 0.0}, 1}}), InvalidGeometry);
    CHECK_THROWS_AS(ring({{{0.2, 0.0}, 1}}), InvalidGeometry);
    CHECK_THROWS_AS(disk({{{0.2, 0.0}, 1}, {{0.2, 0.0}, -1}}), CoincidentVortices);
    // Dead vortices may sit anywhere.
    CHECK_NOTHROW(disk({{{0.2, 0.0}, 1}, {{0.2, 0.0}, -1, false}}));
    const VortexConfiguration c = ring({{{0.8, 0.0}, 1}});
    CHECK(c.context() != nullptr);
    CHECK(c.context()->omega1() == doctest::Approx(pi));
    CHECK(disk({{{0.1, 0.0}, 1}}).context() == nullptr);
}

TEST_CASE("disk velocity examples") {
    const VortexConfiguration centre = disk({{{0.0, 0.0}, 1}});
    CHECK(std::abs(vortex_velocity_conj(centre, 0)) < 1e-15);
    const VortexConfiguration half = disk({{{0.5, 0.0}, 1}});
    CHECK(std::abs(vortex_velocity_conj(half, 0) - Complex(0.0, -2.0 / 3.0)) < 1e-15);
}

TEST_CASE("disk velocity matches the image-sum reference") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto vs = random_vortices(rng, 1 + trial % 4, 0.05, 0.9);
        const VortexConfiguration c = disk(vs);
        for (std::size_t j = 0; j < vs.size(); ++j) {
            CHECK(std::abs(vortex_velocity_conj(c, j) - disk_reference(vs, j, 1.0)) < 1e-12);
        }
    }
}

TEST_CASE("impermeable boundaries") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const auto vd = random_vortices(rng, 1 + trial % 4, 0.1, 0.8);
        const VortexConfiguration d = disk(vd);
        const auto va = random_vortices(rng, 1 + trial % 4, 0.7, 1.3);
        const VortexConfiguration a = ring(va);
        for (int k = 0; k < 64; ++k) {
            const Complex u = std::polar(1.0, 2 * pi * (k + 0.5) / 64);
            const Complex wd = field_velocity_conj(d, u * (1.0 - 1e-12));
            CHECK(std::abs((wd * u).real()) / std::abs(wd * u) < 1e-8);
            for (double R : {0.5 * (1 + 1e-12), 1.5 * (1 - 1e-12)}) {
                const Complex z = R * u;
                const Complex wa = field_velocity_conj(a, z);
                CHECK(std::abs((wa * z).real()) / std::abs(wa * z) < 1e-8);
            }
        }
    }
}

TEST_CASE("rotational covariance") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const double alpha = 0.3 + trial;
        const Complex rot = std::polar(1.0, alpha);
        const bool annulus = trial % 2 == 1;
        auto vs = annulus ? random_vortices(rng, 3, 0.7, 1.3) : random_vortices(rng, 3, 0.1, 0.8);
        const VortexConfiguration c = annulus ? ring(vs) : disk(vs);
        for (Vortex& v : vs) v.position *= rot;
        const VortexConfiguration r = annulus ? ring(vs) : disk(vs);
        for (std::size_t j = 0; j < vs.size(); ++j) {
            const Complex w = vortex_velocity_conj(c, j);
            const Complex wr = vortex_velocity_conj(r, j);
            CHECK(std::abs(wr - w / rot) < 1e-10 * std::abs(w));
        }
    }
}

TEST_CASE("negating every degree negates the disk velocities") {
    std::vector<Vortex> vs{{{0.3, 0.1}, 1}, {{-0.2, 0.5}, -1}, {{0.1, -0.6}, 1}};
    const VortexConfiguration c = disk(vs);
    for (Vortex& v : vs) v.degree = -v.degree;
    const VortexConfiguration f = disk(vs);
    for (std::size_t j = 0; j < vs.size(); ++j) CHECK(vortex_velocity_conj(f, j) == -vortex_velocity_conj(c, j));
}

TEST_CASE("self term removal") {
    SUBCASE("disk: the regular part is the vortex velocity") {
        const VortexConfiguration c = disk({{{0.3, 0.2}, 1}, {{-0.4, 0.1}, -1}});
        const Complex zj = c[0].position;
        for (double ang : {0.0, 1.0, 2.5}) {
            const Complex z = zj + std::polar(1e-4, ang);
            const Complex reg = field_velocity_conj(c, z) - 1.0 / (I * (z - zj));
            CHECK(std::abs(reg - vortex_velocity_conj(c, 0)) < 1e-3);
        }
    }
    SUBCASE("annulus: the regular part differs by the logarithmic-variable offset") {
        const VortexConfiguration c = ring({{{0.9, 0.2}, 1}, {{-0.6, 0.7}, -1}});
        for (std::size_t j = 0; j < 2; ++j) {
            const Complex zj = c[j].position;
            const Complex z = zj + std::polar(1e-4, 0.7);
            const Complex reg = field_velocity_conj(c, z) - double(c[j].degree) / (I * (z - zj));
            const Complex expected = vortex_velocity_conj(c, j) + annulus_self_offset(zj, c[j].degree);
            CHECK(std::abs(reg - expected) < 1e-3);
            CHECK(std::abs(reg - vortex_velocity_conj(c, j)) > 0.1);
        }
    }
}

TEST_CASE("field velocity is the derivative of the complex potential") {
    const VortexConfiguration d = disk({{{0.3, 0.2}, 1}, {{-0.4, 0.1}, -1}});
    const VortexConfiguration a = ring({{{0.9, 0.2}, 1}, {{-0.6, 0.7}, -1}, {{0.1, -1.2}, 1}});
    const double h = 1e-6;
    for (const VortexConfiguration* c : {&d, &a}) {
        for (Complex z : {Complex(0.7, -0.3), Complex(-0.2, -0.8), Complex(0.1, 0.75)}) {
            const Complex dw = (complex_potential(*c, z + h) - complex_potential(*c, z - h)) / (2 * h);
            CHECK(std::abs(dw - field_velocity_conj(*c, z)) < 1e-6 * std::abs(dw));
        }
    }
    // Phase winds by 2 pi n around a vortex: Re W changes by -2 pi n along a loop
    // through single-valued branches.
    double total = 0.0;
    const Complex zc = a[0].position;
    double prev = phase_field(a, zc + 0.05);
    for (int k = 1; k <= 400; ++k) {
        const double cur = phase_field(a, zc + std::polar(0.05, 2 * pi * k / 400));
        double step = cur - prev;
        step -= 2 * pi * std::round(step / (2 * pi));
        total += step;
        prev = cur;
    }
    CHECK(std::abs(std::abs(total) - 2 * pi) < 1e-6);
}

TEST_CASE("symmetric configurations reduce to one sector") {
    const DomainGeometry dom = DomainGeometry::annulus(0.5, 1.5);
    for (int N : {1, 2, 3, 5}) {
        const std::vector<Vortex> sector_vs{{std::polar(0.7, 0.3), 1}, {std::polar(0.95, 1.0 / N), -1}};
        std::vector<Vortex> full;
        for (int m = 0; m < N; ++m) {
            for (const Vortex& v : sector_vs) full.push_back({v.position * std::polar(1.0, 2 * pi * m / N), v.degree});
        }
        const VortexConfiguration whole(dom, full);
        const VortexConfiguration sector(dom, sector_vs);
        CHECK(std::abs(symmetric_velocity_conj(sector, N, 0) - vortex_velocity_conj(whole, 0)) < 1e-12);
        CHECK(std::abs(symmetric_velocity_conj(sector, N, 1) - vortex_velocity_conj(whole, 1)) < 1e-12);
    }
}

TEST_CASE("small inner circle: the annulus formula keeps a fixed offset from the disk formula") {
    const std::vector<std::vector<Vortex>> cases{
        {{{0.5, 0.0}, 1}},
        {{{0.6, 0.0}, 1}, {{-0.6, 0.0}, -1}},
        {{{0.3, 0.4}, 1}, {{-0.5, 0.1}, 1}, {{0.2, -0.6}, -1}},
    };
    for (const auto& vs : cases) {
        const VortexConfiguration d = disk(vs);
        double previous = 1e300;
        for (double R1 : {1e-2, 1e-3, 1e-4}) {
            const VortexConfiguration a(DomainGeometry::annulus(R1, 1.0), vs);
            double corrected = 0.0;
            for (std::size_t j = 0; j < vs.size(); ++j) {
                const Complex wd = vortex_velocity_conj(d, j);
                const Complex wa = vortex_velocity_conj(a, j) + annulus_self_offset(vs[j].position, vs[j].degree);
                corrected = std::max(corrected, std::abs(wa - wd) / std::abs(wd));
            }
            CHECK(corrected < previous);
            previous = corrected;
        }
        CHECK(previous < 1e-6);
        // Without the offset the discrepancy stays of order one.
        CHECK(circle_limit_check(d, 1e-4) > 0.1);
    }
    // Single vortex at 0.5: annulus gives -5/3 i against the disk's -2/3 i.
    const VortexConfiguration one(DomainGeometry::annulus(1e-4, 1.0), {{{0.5, 0.0}, 1}});
    CHECK(std::abs(vortex_velocity_conj(one, 0) - Complex(0.0, -5.0 / 3.0)) < 1e-6);
}

TEST_CASE("field evaluation errors") {
    const VortexConfiguration a = ring({{{0.9, 0.0}, 1}});
    CHECK_THROWS_AS(field_velocity_conj(a, {0.9, 0.0}), SingularPoint);
    CHECK_THROWS_AS(field_velocity_conj(a, {0.1, 0.0}), SingularPoint);
    CHECK_THROWS_AS(complex_potential(a, {2.0, 0.0}), SingularPoint);
    const VortexConfiguration dead = ring({{{0.9, 0.0}, 1, false}});
    CHECK_THROWS_AS(vortex_velocity_conj(dead, 0), SingularPoint);
    CHECK_THROWS_AS(circle_limit_check(a, 1e-4), InvalidGeometry);
}
