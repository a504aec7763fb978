#include "glvortex/elliptic.hpp"
#include "glvortex/errors.hpp"
#include "support/theta_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace glvortex;

namespace {

constexpr double pi = std::numbers::pi;
const Complex I{0.0, 1.0};

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// exp(log_sigma) comparison, insensitive to the 2 pi i branch.
double log_rel(Complex a, Complex b) {
    const Complex d = a - b;
    const double k = std::round(d.imag() / (2 * pi));
    return std::abs(d - Complex(0.0, 2 * pi * k));
}

const std::vector<Complex> sample_points{{0.3, 0.2}, {-0.7, 0.45}, {1.1, -0.3}, {0.05, 0.6}, {-0.4, -0.15}};

}  // namespace

TEST_CASE("lattice constants match frozen theta-function values") {
    const EllipticContext c = make_context(0.5, 1.5, 1);
    CHECK(c.omega1() == doctest::Approx(pi));
    CHECK(c.omega2_im() == doctest::Approx(std::log(3.0)));
    CHECK(c.q() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(std::abs(c.eta() - Complex(-0.71101537391549841, 0.0)) < 1e-13);
    CHECK(std::abs(c.eta_prime() - Complex(0.0, -0.74864147371968992)) < 1e-13);
    CHECK(std::abs(c.e1() - 0.68349483909320978) < 1e-13);
    CHECK(std::abs(c.e2() - 0.67939186236172671) < 1e-13);
    CHECK(std::abs(c.e3() + 1.3628867014549365) < 1e-13);

    const EllipticContext c2 = make_context(0.5, 1.5, 2);
    CHECK(std::abs(c2.eta() - 0.36261580871538441) < 1e-13);
    CHECK(std::abs(c2.e1() - 0.86675701025360519) < 1e-13);
    CHECK(std::abs(c2.e2() - 0.50023266793281436) < 1e-13);

    const EllipticContext c3 = make_context(0.1, 1.0, 3);
    CHECK(std::abs(c3.eta() - 0.78537931378497803) < 1e-13);
    CHECK(std::abs(c3.eta_prime() - Complex(0.0, 0.22689737308952057)) < 1e-13);
    CHECK(std::abs(c3.e1() - 1.5000360000360001) < 1e-12);
    CHECK(std::abs(c3.e3() + 0.76801807201810808) < 1e-12);

    // A wide, flat cell (omega2_im << omega1) where the nome is close to 1.
    const EllipticContext flat = make_context(0.9, 1.0, 1);
    CHECK(flat.eta().real() == doctest::Approx(-217.85350101204904).epsilon(1e-14));
    CHECK(flat.e1().real() == doctest::Approx(74.090533902400607).epsilon(1e-14));
}

TEST_CASE("function values match frozen theta-function values") {
    struct Row {
        double R1, R2;
        int N;
        Complex z, zeta, wp, wpp, lsig;
    };
    const std::vector<Row> rows{
        {0.5, 1.5, 1, {0.3, 0.2}, {2.3084219031597419, -1.5427092929926764}, {2.9735341719186358, -7.0682617443578963},
         {8.362515602045292, 41.970320881732374}, {-1.0198402453875957, 0.58772161917536323}},
        {0.5, 1.5, 1, {1.7, -0.4}, {0.2803971092914056, 0.29285825102691154}, {0.70700538039536044, 0.058332706468269921},
         {-0.071155858996708183, -0.16898743712875052}, {0.44662297561349078, -0.11560514229252145}},
        {0.5, 1.5, 1, {0.1, 1.0}, {0.13891347611146345, -0.88021177832415428}, {-1.3595228780269982, -0.082313262258882861},
         {0.87791780721505795, -0.77727356661780358}, {-0.01980352091370839, 1.4824976825149272}},
        {0.5, 1.5, 2, {0.3, 0.2}, {2.3084540431182401, -1.542839285315543}, {2.973882471782386, -7.0671867084110364},
         {8.3672892062104977, 41.974745618738133}, {-1.0198315298438018, 0.58771338942253789}},
        {0.5, 1.5, 2, {0.9, 0.5}, {0.83193669311462616, -0.56370950888161061}, {0.6740626375488601, -0.62017951167195887},
         {0.30374653410531459, 1.864630709276718}, {0.038058172822028858, 0.4837254997063954}},
        {0.1, 1.0, 3, {0.25, -0.3}, {1.6452455302323044, 1.9702967879834824}, {-1.1943068761259129, 6.4003469845701171},
         {29.396787934219775, -16.709447990426954}, {-0.93969128900895249, -0.87630207495972663}},
        {0.1, 1.0, 3, {0.5, 2.0}, {0.38361851703306365, -0.00045863397917574968},
         {-0.75170442347931985, -0.018645933911770438}, {0.077716512881208352, -0.0033233796247349493},
         {0.49497270680648613, 1.568707782892613}},
        {0.9, 1.0, 1, {0.4, 0.03}, {-14.727314217739526, -2.2228697200689061}, {74.094211797861292, -0.0045830850187065613},
         {-0.10966533756866519, 0.13665863705774701}, {-3.3254929233138962, -0.44181797217922789}},
        {0.9, 1.0, 1, {-2.1, -0.05}, {140.68134519876305, 3.7045266951200304}, {74.090533902400607, 0.0},
         {0.0, 0.0}, {-135.36368170839291, -10.175659913527946}},
    };
    for (const Row& r : rows) {
        CAPTURE(r.z);
        const EllipticContext c = make_context(r.R1, r.R2, r.N);
        CHECK(rel(zeta(c, r.z), r.zeta) < 1e-12);
        CHECK(rel(weierstrass_p(c, r.z), r.wp) < 1e-12);
        CHECK(rel(weierstrass_p_prime(c, r.z), r.wpp) < 1e-11);
        CHECK(log_rel(log_sigma(c, r.z), r.lsig) < 1e-12);
    }
}

TEST_CASE("zeta and sigma agree with the theta series across geometries") {
    for (double ratio : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (int N : {1, 2, 3}) {
            const EllipticContext c = make_context(ratio, 1.0, N);
            // The plain theta sums lose digits to cancellation once q is near 1.
            if (c.q() > 0.5) continue;
            const oracle::Theta th(pi / N, std::log(1.0 / ratio));
            CHECK(std::abs(c.eta().real() - th.eta) < 1e-11);
            for (Complex z0 : sample_points) {
                const Complex z(z0.real() * c.omega1() / 2, z0.imag() * c.omega2_im());
                CAPTURE(ratio);
                CAPTURE(N);
                CAPTURE(z);
                CHECK(rel(c.zeta(z), th.zeta(z)) < 1e-10);
                CHECK(rel(c.wp(z), th.wp(z)) < 1e-10);
                CHECK(rel(std::exp(c.log_sigma(z)), th.sigma(z)) < 1e-10);
            }
        }
    }
}

TEST_CASE("quasi-periodicity and argument reduction") {
    const EllipticContext c = make_context(0.5, 1.5, 1);
    const Complex z{0.4, 0.3};
    const Complex w1 = c.omega1();
    const Complex w2 = c.omega2();
    CHECK(std::abs(c.zeta(z + 2.0 * w1) - c.zeta(z) - 2.0 * c.eta()) < 1e-12);
    CHECK(std::abs(c.zeta(z + 2.0 * w2) - c.zeta(z) - 2.0 * c.eta_prime()) < 1e-12);
    CHECK(std::abs(c.zeta(z - 6.0 * w1 + 4.0 * w2) - c.zeta(z) + 6.0 * c.eta() - 4.0 * c.eta_prime()) < 1e-11);
    CHECK(std::abs(c.wp(z + 2.0 * w1 - 2.0 * w2) - c.wp(z)) < 1e-12);
    CHECK(std::abs(c.wp_prime(z - 4.0 * w2) - c.wp_prime(z)) < 1e-11);
    // sigma(z + 2w) = -exp(2 eta_w (z + w)) sigma(z)
    const Complex s1 = std::exp(c.log_sigma(z + 2.0 * w1));
    CHECK(std::abs(s1 + std::exp(2.0 * c.eta() * (z + w1)) * std::exp(c.log_sigma(z))) < 1e-12);
    const Complex s2 = std::exp(c.log_sigma(z + 2.0 * w2));
    CHECK(std::abs(s2 + std::exp(2.0 * c.eta_prime() * (z + w2)) * std::exp(c.log_sigma(z))) < 1e-12);
}

TEST_CASE("derivative relations") {
    const EllipticContext c = make_context(0.3, 1.0, 2);
    const double h = 1e-5;
    for (Complex z : sample_points) {
        const Complex dz = (c.zeta(z + h) - c.zeta(z - h)) / (2 * h);
        CHECK(std::abs(dz + c.wp(z)) < 1e-7 * std::max(1.0, std::abs(c.wp(z))));
        const Complex dwp = (c.wp(z + h) - c.wp(z - h)) / (2 * h);
        CHECK(std::abs(dwp - c.wp_prime(z)) < 1e-6 * std::max(1.0, std::abs(c.wp_prime(z))));
        const Complex ds = (c.log_sigma(z + h) - c.log_sigma(z - h)) / (2 * h);
        CHECK(std::abs(ds - c.zeta(z)) < 1e-7 * std::max(1.0, std::abs(c.zeta(z))));
        // (wp')^2 = 4 (wp - e1)(wp - e2)(wp - e3)
        const Complex p = c.wp(z);
        const Complex lhs = c.wp_prime(z) * c.wp_prime(z);
        const Complex rhs = 4.0 * (p - c.e1()) * (p - c.e2()) * (p - c.e3());
        CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("Laurent behaviour near the origin") {
    const EllipticContext c = make_context(0.5, 1.5, 1);
    const Complex z{1e-3, 2e-3};
    CHECK(std::abs(c.zeta(z) - 1.0 / z) < 1e-5);
    CHECK(std::abs(c.wp(z) - 1.0 / (z * z)) < 1e-4);
    CHECK(std::abs(c.log_sigma(z) - std::log(z)) < 1e-6);
}

TEST_CASE("square lattice has e2 = 0 and eta = pi / (4 omega1)") {
    // omega2_im = omega1 makes the lattice square.
    const EllipticContext c(1.0, 1.0);
    CHECK(std::abs(c.e2()) < 1e-13);
    CHECK(std::abs(c.e1() + c.e3()) < 1e-13);
    CHECK(c.eta().real() == doctest::Approx(pi / 4.0).epsilon(1e-13));
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(make_context(1.5, 0.5, 1), InvalidGeometry);
    CHECK_THROWS_AS(make_context(0.0, 0.5, 1), InvalidGeometry);
    CHECK_THROWS_AS(make_context(0.5, 1.5, 0), InvalidGeometry);
    CHECK_THROWS_AS(EllipticContext(-1.0, 1.0), InvalidGeometry);
    const EllipticContext c = make_context(0.5, 1.5, 1);
    CHECK_THROWS_AS(c.zeta(0.0), PoleError);
    CHECK_THROWS_AS(c.wp(2.0 * c.omega1()), PoleError);
    CHECK_THROWS_AS(c.log_sigma(2.0 * c.omega2()), PoleError);
    CHECK_THROWS_AS(c.wp_prime(Complex(2.0 * c.omega1(), -2.0 * c.omega2_im())), PoleError);
}

TEST_CASE("classical identities on a grid of geometries") {
    for (double ratio : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (int N : {1, 2, 3}) {
            CAPTURE(ratio);
            CAPTURE(N);
            const EllipticContext c = make_context(ratio, 1.0, N);
            const Complex w1 = c.omega1();
            const Complex w2 = c.omega2();
            // Legendre relation.
            CHECK(std::abs(c.eta() * w2 - c.eta_prime() * w1 - I * pi / 2.0) < 1e-10);
            // wp' vanishes at the half-periods.
            CHECK(std::abs(c.wp_prime(w1)) < 1e-10);
            CHECK(std::abs(c.wp_prime(w2)) < 1e-10);
            CHECK(std::abs(c.wp_prime(w1 + w2)) < 1e-10);
            // e1 + e2 + e3 = 0 with real, ordered roots.
            CHECK(std::abs(c.e1() + c.e2() + c.e3()) < 1e-10);
            // On a flat cell e1 - e2 falls below double resolution.
            const double e_scale = std::abs(c.e1());
            CHECK(c.e3().real() < c.e2().real());
            CHECK(c.e2().real() < c.e1().real() + 1e-10 * e_scale);
            CHECK(c.e2().real() <= c.e1().real());
            CHECK(std::abs(c.e1().imag()) + std::abs(c.e2().imag()) + std::abs(c.e3().imag()) < 1e-10);
            // e2 <= 0 exactly when the rectangle is at least as tall as wide.
            if (c.omega2_im() >= c.omega1() * (1 + 1e-9)) CHECK(c.e2().real() <= 0.0);
            if (c.omega2_im() <= c.omega1() * (1 - 1e-9)) CHECK(c.e2().real() >= 0.0);
            // Points within the shorter half-period, where wp(u) - wp(v) is
            // not exponentially small.
            const double h = std::min(c.omega1(), c.omega2_im());
            for (Complex z0 : sample_points) {
                const Complex u = z0 * h;
                const Complex v = Complex(0.37, -0.21) * h;
                CHECK(std::abs(c.zeta(-u) + c.zeta(u)) < 1e-10 * std::max(1.0, std::abs(c.zeta(u))));
                const Complex lhs = c.zeta(u + v) - c.zeta(u) - c.zeta(v);
                const Complex rhs = 0.5 * (c.wp_prime(u) - c.wp_prime(v)) / (c.wp(u) - c.wp(v));
                CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
            }
        }
    }
}

TEST_CASE("spot values against product and log-derivative oracles") {
    const EllipticContext c = make_context(0.5, 1.5, 1);
    CHECK(std::abs(c.zeta(c.omega1()) - c.eta()) < 1e-13);

    // zeta as the central difference of log sigma.
    const Complex z{0.3, 0.2};
    const double h = 1e-5;
    const Complex fd = (c.log_sigma(z + h) - c.log_sigma(z - h)) / (2 * h);
    CHECK(std::abs(fd - c.zeta(z)) < 1e-8);

    // |sigma| from the product over lattice factors, summed directly:
    // ln|sigma(z)| = ln(2 w1 / pi) + Re(eta z^2 / (2 w1)) + ln|sin(az)|
    //               + sum_n ln|1 - 2 q^{2n} cos(2az) + q^{4n}| - 2 ln(1 - q^{2n}).
    const Complex u{0.4, 0.1};
    const double a = pi / (2 * c.omega1());
    const double q = c.q();
    double lhs = std::log(2 * c.omega1() / pi) + (c.eta() * u * u / (2 * c.omega1())).real() +
                 std::log(std::abs(std::sin(a * u)));
    for (int n = 1; n < 200; ++n) {
        const double q2n = std::pow(q, 2 * n);
        lhs += std::log(std::abs(1.0 - 2.0 * q2n * std::cos(2.0 * a * u) + q2n * q2n)) - 2 * std::log(1 - q2n);
    }
    CHECK(std::abs(c.log_sigma(u).real() - lhs) < 1e-13);
}

TEST_CASE("parity on random points of the cell") {
    const EllipticContext c = make_context(0.3, 1.2, 2);
    unsigned state = 12345;
    auto uniform = [&] {
        state = state * 1664525u + 1013904223u;
        return (state >> 8) / double(1u << 24);
    };
    for (int i = 0; i < 100; ++i) {
        const Complex z((2 * uniform() - 1) * c.omega1(), (2 * uniform() - 1) * c.omega2_im());
        if (std::abs(z) < 1e-3) continue;
        const double s = std::max(1.0, std::abs(c.wp(z)));
        CHECK(std::abs(c.zeta(-z) + c.zeta(z)) < 1e-12 * std::max(1.0, std::abs(c.zeta(z))));
        CHECK(std::abs(c.wp(-z) - c.wp(z)) < 1e-12 * s);
        CHECK(std::abs(c.wp_prime(-z) + c.wp_prime(z)) < 1e-12 * std::max(1.0, std::abs(c.wp_prime(z))));
    }
}
