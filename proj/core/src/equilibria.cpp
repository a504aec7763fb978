#include "glvortex/equilibria.hpp"

#include "glvortex/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace glvortex {

namespace {

constexpr double pi = std::numbers::pi;

double max_velocity(const VortexConfiguration& config) {
    double worst = 0.0;
    for (const Complex& w : vortex_velocities_conj(config)) worst = std::max(worst, std::abs(w));
    return worst;
}

void require_chains(int N) {
    if (N < 1) throw InvalidGeometry("chain count must be at least 1");
}

StationaryConfig make_result(VortexConfiguration config, StationaryKind kind) {
    const double residual = max_velocity(config);
    return {std::move(config), residual, kind, 0};
}

}  // namespace

std::string_view to_string(StationaryKind kind) noexcept {
    switch (kind) {
        case StationaryKind::analytic_pair: return "analytic_pair";
        case StationaryKind::analytic_chains: return "analytic_chains";
        case StationaryKind::same_sign_ring: return "same_sign_ring";
        case StationaryKind::numerical: break;
    }
    return "numerical";
}

StationaryConfig analytic_pair(double R1, double R2) {
    const DomainGeometry domain = DomainGeometry::annulus(R1, R2);
    const double r = std::sqrt(R1 * R2);
    return make_result(VortexConfiguration(domain, {{{r, 0.0}, 1}, {{-r, 0.0}, -1}}), StationaryKind::analytic_pair);
}

StationaryConfig analytic_chains(double R1, double R2, int N) {
    require_chains(N);
    const DomainGeometry domain = DomainGeometry::annulus(R1, R2);
    const double r = std::sqrt(R1 * R2);
    std::vector<Vortex> vs;
    for (int k = 0; k < 2 * N; ++k) {
        vs.push_back({std::polar(r, pi * k / N), k % 2 == 0 ? 1 : -1});
    }
    return make_result(VortexConfiguration(domain, std::move(vs)), StationaryKind::analytic_chains);
}

Complex chain_velocity_conj(double R1, double R2, int N, double r) {
    require_chains(N);
    const VortexConfiguration sector(DomainGeometry::annulus(R1, R2),
                                     {{{r, 0.0}, 1}, {std::polar(r, pi / N), -1}});
    return symmetric_velocity_conj(sector, N, 0);
}

namespace {

// z W~'(z) of a ring vortex reduced to one vortex per sector, as a function of
// s = ln(r / R2): -zeta(2is) + 2i eta s / omega1, which is purely imaginary.
double ring_balance(const EllipticContext& ctx, double s) {
    return -ctx.zeta(Complex(0.0, 2.0 * s)).imag() + 2.0 * ctx.eta().real() * s / ctx.omega1();
}

double ring_balance_derivative(const EllipticContext& ctx, double s) {
    return 2.0 * ctx.wp(Complex(0.0, 2.0 * s)).real() + 2.0 * ctx.eta().real() / ctx.omega1();
}

}  // namespace

double same_sign_radius(double R1, double R2, int N) {
    require_chains(N);
    const EllipticContext ctx = make_context(R1, R2, N);
    double lo = std::log(R1 * (1.0 + 1e-6) / R2);
    double hi = std::log(1.0 - 1e-6);
    double g_lo = ring_balance(ctx, lo);
    const double g_hi = ring_balance(ctx, hi);
    if (!(g_lo * g_hi < 0.0)) {
        throw NoRootError("ring balance has no sign change on the bracket");
    }
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double g = ring_balance(ctx, mid);
        if ((g < 0.0) == (g_lo < 0.0)) {
            lo = mid;
            g_lo = g;
        } else {
            hi = mid;
        }
    }
    double s = 0.5 * (lo + hi);
    for (int it = 0; it < 5; ++it) {
        const double g = ring_balance(ctx, s);
        const double step = g / ring_balance_derivative(ctx, s);
        const double next = s - step;
        if (!std::isfinite(next) || next < lo || next > hi) break;
        if (std::abs(ring_balance(ctx, next)) >= std::abs(g)) break;
        s = next;
        if (std::abs(step) < 1e-15) break;
    }
    return R2 * std::exp(s);
}

double same_sign_balance(double R1, double R2, int N, double r) {
    require_chains(N);
    const EllipticContext ctx = make_context(R1, R2, N);
    const double s = std::log(r / R2);
    const double q2 = ctx.q() * ctx.q();
    double sum = 0.0;
    double q2t = 1.0;
    for (int t = 1; t <= 10000; ++t) {
        q2t *= q2;
        const double term = q2t / (1.0 - q2t) * std::sinh(2.0 * t * N * s);
        sum += term;
        if (std::abs(term) < 1e-17 * (1.0 + std::abs(sum))) break;
    }
    return 1.0 / std::tanh(N * s) - 4.0 * sum;
}

StationaryConfig same_sign_ring(double R1, double R2, int N) {
    const double r0 = same_sign_radius(R1, R2, N);
    std::vector<Vortex> vs;
    for (int k = 0; k < N; ++k) vs.push_back({std::polar(r0, 2.0 * pi * k / N), 1});
    return make_result(VortexConfiguration(DomainGeometry::annulus(R1, R2), std::move(vs)),
                       StationaryKind::same_sign_ring);
}

namespace {

// Unknowns: radius of the first living vortex (angle held), then x, y of the
// others. When the first vortex sits at the origin its angle is undefined and
// it gets x, y as well.
class StationaryProblem {
public:
    explicit StationaryProblem(const VortexConfiguration& guess) : base_(guess) {
        for (std::size_t j = 0; j < guess.size(); ++j) {
            if (guess[j].alive) alive_.push_back(j);
        }
        if (alive_.empty()) throw InvalidGeometry("no living vortices");
        const Complex z0 = guess[alive_.front()].position;
        pinned_ = std::abs(z0) > 1e-12;
        angle_ = std::arg(z0);
    }

    Eigen::Index unknowns() const { return Eigen::Index(2 * alive_.size() - (pinned_ ? 1 : 0)); }
    Eigen::Index equations() const { return Eigen::Index(2 * alive_.size()); }

    Eigen::VectorXd pack(const VortexConfiguration& c) const {
        Eigen::VectorXd x(unknowns());
        Eigen::Index i = 0;
        for (std::size_t a = 0; a < alive_.size(); ++a) {
            const Complex z = c[alive_[a]].position;
            if (a == 0 && pinned_) {
                x(i++) = std::abs(z);
            } else {
                x(i++) = z.real();
                x(i++) = z.imag();
            }
        }
        return x;
    }

    VortexConfiguration unpack(const Eigen::VectorXd& x) const {
        std::vector<Vortex> vs(base_.vortices().begin(), base_.vortices().end());
        Eigen::Index i = 0;
        for (std::size_t a = 0; a < alive_.size(); ++a) {
            Complex& z = vs[alive_[a]].position;
            if (a == 0 && pinned_) {
                z = std::polar(x(i++), angle_);
            } else {
                z = Complex(x(i), x(i + 1));
                i += 2;
            }
        }
        return base_.with_vortices(std::move(vs));
    }

    Eigen::VectorXd residual(const VortexConfiguration& c) const {
        const std::vector<Complex> w = vortex_velocities_conj(c);
        Eigen::VectorXd f(equations());
        for (std::size_t a = 0; a < alive_.size(); ++a) {
            f(Eigen::Index(2 * a)) = w[alive_[a]].real();
            f(Eigen::Index(2 * a + 1)) = w[alive_[a]].imag();
        }
        return f;
    }

    static double max_norm(const Eigen::VectorXd& f) {
        double worst = 0.0;
        for (Eigen::Index i = 0; i + 1 < f.size(); i += 2) worst = std::max(worst, std::hypot(f(i), f(i + 1)));
        return worst;
    }

    Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const {
        constexpr double h = 1e-6;
        Eigen::MatrixXd J(equations(), unknowns());
        for (Eigen::Index c = 0; c < unknowns(); ++c) {
            Eigen::VectorXd xp = x;
            Eigen::VectorXd xm = x;
            xp(c) += h;
            xm(c) -= h;
            J.col(c) = (residual(unpack(xp)) - residual(unpack(xm))) / (2.0 * h);
        }
        return J;
    }

private:
    VortexConfiguration base_;
    std::vector<std::size_t> alive_;
    bool pinned_ = true;
    double angle_ = 0.0;
};

}  // namespace

StationaryConfig find_stationary(const VortexConfiguration& initial_guess) {
    constexpr double tol = 1e-10;
    constexpr int max_iterations = 100;
    const StationaryProblem problem(initial_guess);

    Eigen::VectorXd x = problem.pack(initial_guess);
    VortexConfiguration current = problem.unpack(x);
    Eigen::VectorXd f = problem.residual(current);
    double res = StationaryProblem::max_norm(f);

    int it = 1;
    for (; it <= max_iterations; ++it) {
        if (res < tol) return {current, res, StationaryKind::numerical, it};
        const Eigen::MatrixXd J = problem.jacobian(x);
        const Eigen::VectorXd dx = J.completeOrthogonalDecomposition().solve(-f);

        bool improved = false;
        double lambda = 1.0;
        for (int ls = 0; ls < 40; ++ls, lambda *= 0.5) {
            const Eigen::VectorXd trial = x + lambda * dx;
            try {
                VortexConfiguration c = problem.unpack(trial);
                Eigen::VectorXd ft = problem.residual(c);
                if (ft.norm() < f.norm()) {
                    x = trial;
                    current = std::move(c);
                    f = std::move(ft);
                    res = StationaryProblem::max_norm(f);
                    improved = true;
                    break;
                }
            } catch (const Error&) {
            }
        }
        if (!improved) break;
    }
    const int used = std::min(it, max_iterations);
    if (res < tol) return {current, res, StationaryKind::numerical, used};
    throw NonConvergence(std::size_t(used), res);
}

}  // namespace glvortex
