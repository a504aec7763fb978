#pragma once

#include <complex>

namespace glvortex {

using Complex = std::complex<double>;

/**
 * Weierstrass elliptic functions on a rectangular lattice with real half-period
 * omega1 and imaginary half-period omega2 = i * omega2_im.
 *
 * The lattice used for an annulus R1 < |z| < R2 carrying `chains` identical
 * copies of a vortex pattern is omega1 = pi / chains, omega2 = i ln(R2/R1).
 * Arguments are reduced into the fundamental cell |Re z| <= omega1,
 * |Im z| <= omega2_im and quasi-period corrections are added back exactly.
 * The series are summed on whichever of the lattice and its rotation by -i has
 * the smaller nome, so the expansion ratio never exceeds exp(-pi).
 *
 * A context is immutable after construction and can be shared freely between
 * threads.
 */
class EllipticContext {
public:
    static constexpr double default_series_tol = 1e-14;

    EllipticContext(double omega1, double omega2_im, double series_tol = default_series_tol);

    double omega1() const noexcept { return omega1_; }
    double omega2_im() const noexcept { return omega2_im_; }
    Complex omega2() const noexcept { return {0.0, omega2_im_}; }
    /// exp(-pi omega2_im / omega1)
    double q() const noexcept { return q_; }
    double series_tol() const noexcept { return series_tol_; }

    /// zeta(omega1)
    Complex eta() const noexcept { return eta_; }
    /// zeta(omega2)
    Complex eta_prime() const noexcept { return eta_prime_; }

    /// wp(omega1), wp(omega1 + omega2), wp(omega2)
    Complex e1() const noexcept { return e1_; }
    Complex e2() const noexcept { return e2_; }
    Complex e3() const noexcept { return e3_; }

    Complex zeta(Complex z) const;
    Complex wp(Complex z) const;
    Complex wp_prime(Complex z) const;

    /// A branch of ln sigma(z). The real part is single valued; the imaginary
    /// part is only defined modulo 2 pi and is not unwrapped across calls.
    Complex log_sigma(Complex z) const;

private:
    struct Reduced {
        Complex z;      // representative in the fundamental cell
        long m = 0;     // multiples of 2 omega1 removed
        long n = 0;     // multiples of 2 omega2 removed
    };

    Reduced reduce(Complex z) const;
    void check_pole(const Reduced& r) const;

    Complex zeta_series(Complex z) const;
    Complex wp_series(Complex z) const;
    Complex wp_prime_series(Complex z) const;
    Complex log_sigma_series(Complex z) const;

    double omega1_;
    double omega2_im_;
    double series_tol_;
    double q_;
    // Lattice the series are summed on: the original one, or the original
    // rotated by -i when omega2_im < omega1.
    bool rotated_;
    double s_omega1_;
    double s_q_;
    Complex s_eta_;
    Complex eta_;
    Complex eta_prime_;
    Complex e1_, e2_, e3_;
};

/// Lattice for an annulus R1 < |z| < R2 with `chains`-fold symmetry.
/// Throws InvalidGeometry unless 0 < R1 < R2 and chains >= 1.
EllipticContext make_context(double R1, double R2, int chains = 1,
                             double series_tol = EllipticContext::default_series_tol);

// Free-function spellings of the member evaluators.
inline Complex zeta(const EllipticContext& ctx, Complex z) { return ctx.zeta(z); }
inline Complex log_sigma(const EllipticContext& ctx, Complex z) { return ctx.log_sigma(z); }
inline Complex weierstrass_p(const EllipticContext& ctx, Complex z) { return ctx.wp(z); }
inline Complex weierstrass_p_prime(const EllipticContext& ctx, Complex z) { return ctx.wp_prime(z); }

}  // namespace glvortex
