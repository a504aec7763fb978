#include "glvortex/elliptic.hpp"

#include "glvortex/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace glvortex {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int max_terms = 100000;

Complex cot(Complex w) { return std::cos(w) / std::sin(w); }

// sin(2nw) and cos(2nw) for n = 1, 2, ... from powers of exp(+-2iw).
struct TrigPowers {
    struct Step {
        Complex up{1.0, 0.0};
        Complex down{1.0, 0.0};
        Complex sin() const { return (up - down) / Complex(0.0, 2.0); }
        Complex cos() const { return 0.5 * (up + down); }
    };

    explicit TrigPowers(Complex w)
        : e_up(std::exp(Complex(0.0, 2.0) * w)), e_down(std::exp(Complex(0.0, -2.0) * w)) {}

    Step start() const { return {}; }
    void advance(Step& s) const {
        s.up *= e_up;
        s.down *= e_down;
    }

    Complex e_up;
    Complex e_down;
};

}  // namespace

EllipticContext::EllipticContext(double omega1, double omega2_im, double series_tol)
    : omega1_(omega1), omega2_im_(omega2_im), series_tol_(series_tol) {
    if (!(omega1 > 0.0) || !(omega2_im > 0.0) || !std::isfinite(omega1) || !std::isfinite(omega2_im)) {
        throw InvalidGeometry("half-periods must be positive and finite");
    }
    if (!(series_tol > 0.0)) {
        throw InvalidGeometry("series tolerance must be positive");
    }
    q_ = std::exp(-pi * omega2_im_ / omega1_);
    rotated_ = omega2_im_ < omega1_;
    s_omega1_ = rotated_ ? omega2_im_ : omega1_;
    const double s_omega2_im = rotated_ ? omega1_ : omega2_im_;
    s_q_ = std::exp(-pi * s_omega2_im / s_omega1_);

    // eta of the series lattice from the theta-function identity
    //   eta = pi^2 / (12 omega1) * (1 - 24 sum q^{2n} / (1 - q^{2n})^2).
    double sum = 0.0;
    const double q2 = s_q_ * s_q_;
    double q2n = 1.0;
    for (int n = 1; n <= max_terms; ++n) {
        q2n *= q2;
        const double one_minus = 1.0 - q2n;
        const double term = q2n / (one_minus * one_minus);
        sum += term;
        if (term < series_tol_ * (1.0 + sum) * 1e-2) break;
    }
    s_eta_ = Complex(pi * pi / (12.0 * s_omega1_) * (1.0 - 24.0 * sum), 0.0);

    // The imaginary half-period lies on the boundary of the cell, where the
    // sine series still converges with ratio q.
    const Complex s_eta_prime = zeta_series(Complex(0.0, s_omega2_im));
    if (rotated_) {
        eta_ = Complex(0.0, 1.0) * s_eta_prime;
        eta_prime_ = Complex(0.0, -1.0) * s_eta_;
    } else {
        eta_ = s_eta_;
        eta_prime_ = s_eta_prime;
    }

    e1_ = wp(Complex(omega1_, 0.0));
    e2_ = wp(Complex(omega1_, omega2_im_));
    e3_ = wp(omega2());
    if (rotated_) {
        // Values at half-periods are real; drop rounding residue.
        e1_ = e1_.real();
        e2_ = e2_.real();
        e3_ = e3_.real();
    }
}

EllipticContext make_context(double R1, double R2, int chains, double series_tol) {
    if (!(R1 > 0.0) || !(R2 > R1) || !std::isfinite(R2)) {
        throw InvalidGeometry("annulus requires 0 < R1 < R2 (got R1 = " + std::to_string(R1) +
                              ", R2 = " + std::to_string(R2) + ")");
    }
    if (chains < 1) {
        throw InvalidGeometry("chain count must be at least 1");
    }
    return EllipticContext(pi / chains, std::log(R2 / R1), series_tol);
}

EllipticContext::Reduced EllipticContext::reduce(Complex z) const {
    Reduced r;
    r.m = std::lround(z.real() / (2.0 * omega1_));
    r.n = std::lround(z.imag() / (2.0 * omega2_im_));
    r.z = Complex(z.real() - 2.0 * omega1_ * static_cast<double>(r.m),
                  z.imag() - 2.0 * omega2_im_ * static_cast<double>(r.n));
    return r;
}

void EllipticContext::check_pole(const Reduced& r) const {
    const double scale = (omega1_ + omega2_im_) * (1.0 + std::abs(double(r.m)) + std::abs(double(r.n)));
    if (!(std::abs(r.z) > 64.0 * std::numeric_limits<double>::epsilon() * scale)) {
        throw PoleError("elliptic function evaluated at a lattice point");
    }
}

// Truncation uses the envelope |sin|, |cos| <= cosh(Im) rather than the term
// itself, since individual terms vanish at isolated arguments.
Complex EllipticContext::zeta_series(Complex z) const {
    const double a = pi / (2.0 * s_omega1_);
    const Complex az = a * z;
    Complex sum = s_eta_ * z / s_omega1_ + a * cot(az);
    const double q2 = s_q_ * s_q_;
    const double b = 2.0 * a * std::abs(z.imag());
    const TrigPowers trig(az);
    TrigPowers::Step step = trig.start();
    double q2n = 1.0;
    for (int n = 1; n <= max_terms; ++n) {
        q2n *= q2;
        trig.advance(step);
        const double c = 2.0 * pi / s_omega1_ * q2n / (1.0 - q2n);
        sum += c * step.sin();
        if (c * std::cosh(n * b) < series_tol_ * (1.0 + std::abs(sum))) break;
    }
    return sum;
}

Complex EllipticContext::wp_series(Complex z) const {
    const double a = pi / (2.0 * s_omega1_);
    const Complex az = a * z;
    const Complex s = std::sin(az);
    Complex sum = -s_eta_ / s_omega1_ + a * a / (s * s);
    const double q2 = s_q_ * s_q_;
    const double b = 2.0 * a * std::abs(z.imag());
    const double k = 2.0 * pi * pi / (s_omega1_ * s_omega1_);
    const TrigPowers trig(az);
    TrigPowers::Step step = trig.start();
    double q2n = 1.0;
    for (int n = 1; n <= max_terms; ++n) {
        q2n *= q2;
        trig.advance(step);
        const double c = k * n * q2n / (1.0 - q2n);
        sum -= c * step.cos();
        if (c * std::cosh(n * b) < series_tol_ * (1.0 + std::abs(sum))) break;
    }
    return sum;
}

Complex EllipticContext::wp_prime_series(Complex z) const {
    const double a = pi / (2.0 * s_omega1_);
    const Complex az = a * z;
    const Complex s = std::sin(az);
    Complex sum = -2.0 * a * a * a * std::cos(az) / (s * s * s);
    const double q2 = s_q_ * s_q_;
    const double b = 2.0 * a * std::abs(z.imag());
    const double k = 2.0 * pi * pi * pi / (s_omega1_ * s_omega1_ * s_omega1_);
    const TrigPowers trig(az);
    TrigPowers::Step step = trig.start();
    double q2n = 1.0;
    for (int n = 1; n <= max_terms; ++n) {
        q2n *= q2;
        trig.advance(step);
        const double c = k * double(n) * double(n) * q2n / (1.0 - q2n);
        sum += c * step.sin();
        if (c * std::cosh(n * b) < series_tol_ * (1.0 + std::abs(sum))) break;
    }
    return sum;
}

// sigma(z) = (2 omega1 / pi) exp(eta z^2 / (2 omega1)) sin(a z)
//            * prod_n (1 - q^{2n} e^{2iaz}) (1 - q^{2n} e^{-2iaz}) / (1 - q^{2n})^2
Complex EllipticContext::log_sigma_series(Complex z) const {
    const double a = pi / (2.0 * s_omega1_);
    const Complex az = a * z;
    Complex sum = std::log(2.0 * s_omega1_ / pi) + s_eta_ * z * z / (2.0 * s_omega1_) + std::log(std::sin(az));
    const Complex up = std::exp(Complex(0.0, 2.0) * az);
    const Complex down = std::exp(Complex(0.0, -2.0) * az);
    const double env = std::exp(2.0 * a * std::abs(z.imag()));
    const double q2 = s_q_ * s_q_;
    double q2n = 1.0;
    for (int n = 1; n <= max_terms; ++n) {
        q2n *= q2;
        // |q^{2n} e^{+-2iaz}| <= q^{2n-1} < 1 inside the cell, so log(1 - w)
        // stays on its principal branch.
        const Complex wu = q2n * up;
        const Complex wd = q2n * down;
        sum += std::log(1.0 - wu) + std::log(1.0 - wd) - 2.0 * std::log1p(-q2n);
        if (2.0 * q2n * env < series_tol_ * (1.0 + std::abs(sum))) break;
    }
    return sum;
}

// With the rotation u = -i z the homogeneity relations give
//   zeta(z) = -i zeta_s(u), wp(z) = -wp_s(u), wp'(z) = i wp'_s(u),
//   ln sigma(z) = ln sigma_s(u) + i pi / 2.
Complex EllipticContext::zeta(Complex z) const {
    const Reduced r = reduce(z);
    check_pole(r);
    const Complex base = rotated_ ? Complex(0.0, -1.0) * zeta_series(Complex(r.z.imag(), -r.z.real()))
                                  : zeta_series(r.z);
    return base + 2.0 * double(r.m) * eta_ + 2.0 * double(r.n) * eta_prime_;
}

Complex EllipticContext::wp(Complex z) const {
    const Reduced r = reduce(z);
    check_pole(r);
    return rotated_ ? -wp_series(Complex(r.z.imag(), -r.z.real())) : wp_series(r.z);
}

Complex EllipticContext::wp_prime(Complex z) const {
    const Reduced r = reduce(z);
    check_pole(r);
    return rotated_ ? Complex(0.0, 1.0) * wp_prime_series(Complex(r.z.imag(), -r.z.real())) : wp_prime_series(r.z);
}

Complex EllipticContext::log_sigma(Complex z) const {
    const Reduced r = reduce(z);
    check_pole(r);
    const double m = double(r.m);
    const double n = double(r.n);
    // sigma(z + 2m w1 + 2n w2) = (-1)^{m+n+mn} exp((2m eta + 2n eta')(z + m w1 + n w2)) sigma(z)
    const Complex shift = (2.0 * m * eta_ + 2.0 * n * eta_prime_) * (r.z + m * omega1_ + n * omega2());
    const long parity = (r.m + r.n + r.m * r.n) & 1L;
    const Complex base = rotated_ ? log_sigma_series(Complex(r.z.imag(), -r.z.real())) + Complex(0.0, pi / 2.0)
                                  : log_sigma_series(r.z);
    return base + shift + Complex(0.0, parity ? pi : 0.0);
}

}  // namespace glvortex
