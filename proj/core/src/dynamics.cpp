#include "glvortex/dynamics.hpp"

#include "glvortex/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

namespace glvortex {

std::string_view to_string(EquationKind kind) noexcept {
    return kind == EquationKind::schrodinger ? "schrodinger" : "heat_flow";
}

std::string_view to_string(IntegrationMethod method) noexcept {
    return method == IntegrationMethod::rk4 ? "rk4" : "rk45";
}

std::string_view to_string(EventKind kind) noexcept {
    return kind == EventKind::pair_annihilation ? "pair_annihilation" : "wall_absorption";
}

IntegratorParams IntegratorParams::defaults_for(const DomainGeometry& domain) {
    IntegratorParams p;
    p.collision_eps = 1e-2 * domain.R2();
    p.wall_eps = 1e-2 * domain.R2();
    return p;
}

void IntegratorParams::validate() const {
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!positive(dt) || !positive(rel_tol) || !positive(abs_tol) || !positive(t_end) ||
        !positive(collision_eps) || !positive(wall_eps) || max_steps == 0) {
        throw InvalidGeometry("integrator parameters must all be positive");
    }
}

std::vector<Complex> rhs(EquationKind equation, const VortexConfiguration& config) {
    std::vector<Complex> w = vortex_velocities_conj(config);
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (!config[j].alive) {
            w[j] = {0.0, 0.0};
            continue;
        }
        const Complex k = w[j];
        if (equation == EquationKind::schrodinger) {
            w[j] = 2.0 * std::conj(k);
        } else {
            const double n = config[j].degree;
            w[j] = Complex(-2.0 * n * k.imag(), -2.0 * n * k.real());
        }
    }
    return w;
}

double angular_moment(const VortexConfiguration& config) {
    double m = 0.0;
    for (const Vortex& v : config.vortices()) {
        if (v.alive) m += v.degree * std::norm(v.position);
    }
    return m;
}

namespace {

using State = std::vector<Complex>;

Complex hermite(Complex y0, Complex f0, Complex y1, Complex f1, double h, double s) {
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    return h00 * y0 + h10 * h * f0 + h01 * y1 + h11 * h * f1;
}

State hermite_state(const State& y0, const State& f0, const State& y1, const State& f1, double h, double s) {
    State out(y0.size());
    for (std::size_t i = 0; i < y0.size(); ++i) out[i] = hermite(y0[i], f0[i], y1[i], f1[i], h, s);
    return out;
}

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State out = y;
    for (const auto& [c, k] : terms) {
        if (c == 0.0) continue;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * c * (*k)[i];
    }
    return out;
}

// One candidate event: a pair distance or a wall distance minus its threshold.
struct EventCandidate {
    EventKind kind;
    std::size_t a;
    std::size_t b;  // unused for walls
    double threshold;
};

class Integrator {
public:
    Integrator(EquationKind equation, const VortexConfiguration& initial, const IntegratorParams& params)
        : equation_(equation), params_(params), base_(initial) {
        degrees_.reserve(initial.size());
        for (const Vortex& v : initial.vortices()) {
            alive_.push_back(v.alive);
            degrees_.push_back(v.degree);
        }
    }

    Trajectory run() {
        params_.validate();
        Trajectory traj;
        double t = 0.0;
        State y(base_.size());
        for (std::size_t j = 0; j < y.size(); ++j) y[j] = base_[j].position;

        // Thresholds already violated at t = 0 fire immediately.
        {
            std::vector<EventCandidate> hits;
            for (const EventCandidate& c : candidates()) {
                if (event_value(c, y) <= 0.0) hits.push_back(c);
            }
            apply_events(hits, y, 0.0, traj);
        }
        State f = eval(y);
        push_sample(traj, t, y, f);

        double h = std::min(params_.dt, params_.t_end);
        std::size_t steps = 0;
        while (t < params_.t_end && alive_count() > 0) {
            if (++steps > params_.max_steps) {
                throw Error("step budget of " + std::to_string(params_.max_steps) + " exhausted at t = " +
                            std::to_string(t));
            }
            const bool fixed = params_.method == IntegrationMethod::rk4;
            double step = std::min(h, params_.t_end - t);
            if (params_.t_end - t - step < 1e-12 * std::max(1.0, params_.t_end)) step = params_.t_end - t;

            std::optional<StepResult> trial;
            try {
                trial = fixed ? rk4_step(y, f, step) : dopri_step(y, f, step);
            } catch (const Error&) {
                trial.reset();
            }
            if (!trial) {
                h = shrink(step, 0.25, t, y);
                continue;
            }
            if (!fixed && trial->error > 1.0) {
                h = shrink(step, std::max(0.2, 0.9 * std::pow(trial->error, -0.2)), t, y);
                continue;
            }

            // Reject steps that overshoot a threshold by more than a factor 2.
            const std::vector<EventCandidate> cands = candidates();
            bool overshoot = false;
            bool crossed = false;
            for (const EventCandidate& c : cands) {
                const double g = event_value(c, trial->y);
                if (g < -0.5 * c.threshold) overshoot = true;
                if (g < 0.0) crossed = true;
            }
            if (overshoot) {
                h = shrink(step, 0.5, t, y);
                continue;
            }

            if (crossed) {
                handle_crossing(cands, t, y, f, *trial, step, traj);
                if (fixed) h = params_.dt;
                continue;
            }

            t += step;
            y = std::move(trial->y);
            f = std::move(trial->f_end);
            push_sample(traj, t, y, f);
            if (fixed) {
                h = params_.dt;
            } else {
                const double grow = trial->error > 0.0 ? 0.9 * std::pow(trial->error, -0.2) : 5.0;
                h = step * std::clamp(grow, 0.2, 5.0);
            }
        }
        return traj;
    }

private:
    struct StepResult {
        State y;
        State f_end;
        double error = 0.0;
    };

    std::size_t alive_count() const { return static_cast<std::size_t>(std::count(alive_.begin(), alive_.end(), true)); }

    VortexConfiguration config_at(const State& y) const {
        std::vector<Vortex> vs(y.size());
        for (std::size_t j = 0; j < y.size(); ++j) vs[j] = Vortex{y[j], degrees_[j], bool(alive_[j])};
        return base_.with_vortices(std::move(vs));
    }

    State eval(const State& y) const { return rhs(equation_, config_at(y)); }

    double shrink(double step, double factor, double t, const State& y) const {
        const double next = step * factor;
        if (next < 1e-13 * std::max(1.0, std::abs(t))) {
            double dmin = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < y.size(); ++i) {
                if (!alive_[i]) continue;
                for (std::size_t k = i + 1; k < y.size(); ++k) {
                    if (alive_[k]) dmin = std::min(dmin, std::abs(y[i] - y[k]));
                }
            }
            throw StepSizeUnderflow(t, dmin);
        }
        return next;
    }

    StepResult rk4_step(const State& y, const State& k1, double h) const {
        const State k2 = eval(axpy(y, h, {{0.5, &k1}}));
        const State k3 = eval(axpy(y, h, {{0.5, &k2}}));
        const State k4 = eval(axpy(y, h, {{1.0, &k3}}));
        StepResult r;
        r.y = axpy(y, h, {{1.0 / 6, &k1}, {1.0 / 3, &k2}, {1.0 / 3, &k3}, {1.0 / 6, &k4}});
        r.f_end = eval(r.y);
        return r;
    }

    // Dormand-Prince 5(4) with FSAL.
    StepResult dopri_step(const State& y, const State& k1, double h) const {
        const State k2 = eval(axpy(y, h, {{1.0 / 5, &k1}}));
        const State k3 = eval(axpy(y, h, {{3.0 / 40, &k1}, {9.0 / 40, &k2}}));
        const State k4 = eval(axpy(y, h, {{44.0 / 45, &k1}, {-56.0 / 15, &k2}, {32.0 / 9, &k3}}));
        const State k5 = eval(axpy(y, h,
                                   {{19372.0 / 6561, &k1},
                                    {-25360.0 / 2187, &k2},
                                    {64448.0 / 6561, &k3},
                                    {-212.0 / 729, &k4}}));
        const State k6 = eval(axpy(y, h,
                                   {{9017.0 / 3168, &k1},
                                    {-355.0 / 33, &k2},
                                    {46732.0 / 5247, &k3},
                                    {49.0 / 176, &k4},
                                    {-5103.0 / 18656, &k5}}));
        StepResult r;
        r.y = axpy(y, h,
                   {{35.0 / 384, &k1}, {500.0 / 1113, &k3}, {125.0 / 192, &k4}, {-2187.0 / 6784, &k5}, {11.0 / 84, &k6}});
        r.f_end = eval(r.y);
        const State& k7 = r.f_end;

        constexpr std::array<double, 7> e{71.0 / 57600, 0.0, -71.0 / 16695, 71.0 / 1920, -17253.0 / 339200,
                                          22.0 / 525, -1.0 / 40};
        double acc = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (!alive_[i]) continue;
            const Complex err = h * (e[0] * k1[i] + e[2] * k3[i] + e[3] * k4[i] + e[4] * k5[i] + e[5] * k6[i] +
                                     e[6] * k7[i]);
            const double sx = params_.abs_tol + params_.rel_tol * std::max(std::abs(y[i].real()), std::abs(r.y[i].real()));
            const double sy = params_.abs_tol + params_.rel_tol * std::max(std::abs(y[i].imag()), std::abs(r.y[i].imag()));
            acc += (err.real() / sx) * (err.real() / sx) + (err.imag() / sy) * (err.imag() / sy);
            count += 2;
        }
        r.error = count ? std::sqrt(acc / double(count)) : 0.0;
        return r;
    }

    std::vector<EventCandidate> candidates() const {
        std::vector<EventCandidate> out;
        for (std::size_t i = 0; i < alive_.size(); ++i) {
            if (!alive_[i]) continue;
            out.push_back({EventKind::wall_absorption, i, i, params_.wall_eps});
            for (std::size_t k = i + 1; k < alive_.size(); ++k) {
                if (alive_[k] && degrees_[i] != degrees_[k]) {
                    out.push_back({EventKind::pair_annihilation, i, k, params_.collision_eps});
                }
            }
        }
        return out;
    }

    double event_value(const EventCandidate& c, const State& y) const {
        if (c.kind == EventKind::pair_annihilation) return std::abs(y[c.a] - y[c.b]) - c.threshold;
        return base_.domain().wall_distance(y[c.a]) - c.threshold;
    }

    void handle_crossing(const std::vector<EventCandidate>& cands, double& t, State& y, State& f,
                         const StepResult& trial, double step, Trajectory& traj) {
        const double tol = std::min(1e-6, 1e-3 * step);
        struct Located {
            EventCandidate c;
            double t_hit;
        };
        std::vector<Located> located;
        for (const EventCandidate& c : cands) {
            if (event_value(c, trial.y) >= 0.0) continue;
            double lo = 0.0;
            double hi = step;
            for (int it = 0; it < 200 && hi - lo > tol; ++it) {
                const double mid = 0.5 * (lo + hi);
                const State ym = hermite_state(y, f, trial.y, trial.f_end, step, mid / step);
                (event_value(c, ym) > 0.0 ? lo : hi) = mid;
            }
            located.push_back({c, hi});
        }
        std::sort(located.begin(), located.end(), [](const Located& a, const Located& b) { return a.t_hit < b.t_hit; });
        const double h_event = located.front().t_hit;

        std::vector<EventCandidate> fired;
        for (const Located& l : located) {
            if (l.t_hit <= h_event + tol) fired.push_back(l.c);
        }

        State y_event;
        if (h_event >= step) {
            y_event = trial.y;
        } else {
            // Recompute the truncated step so positions carry the method's accuracy.
            try {
                y_event = (params_.method == IntegrationMethod::rk4 ? rk4_step(y, f, h_event) : dopri_step(y, f, h_event)).y;
            } catch (const Error&) {
                y_event = hermite_state(y, f, trial.y, trial.f_end, step, h_event / step);
            }
        }
        t += h_event;
        y = std::move(y_event);
        apply_events(fired, y, t, traj);
        f = eval(y);
        push_sample(traj, t, y, f);
    }

    void apply_events(const std::vector<EventCandidate>& fired, const State& y, double t, Trajectory& traj) {
        // Deeper penetration first, so a vortex in two fired pairs joins the closer one.
        std::vector<EventCandidate> order = fired;
        std::stable_sort(order.begin(), order.end(), [&](const EventCandidate& a, const EventCandidate& b) {
            return event_value(a, y) / a.threshold < event_value(b, y) / b.threshold;
        });
        for (const EventCandidate& c : order) {
            if (c.kind == EventKind::pair_annihilation) {
                if (!alive_[c.a] || !alive_[c.b]) continue;
                alive_[c.a] = false;
                alive_[c.b] = false;
                traj.events.push_back({t, c.kind, {c.a, c.b}});
            } else {
                if (!alive_[c.a]) continue;
                alive_[c.a] = false;
                traj.events.push_back({t, c.kind, {c.a}});
            }
        }
    }

    void push_sample(Trajectory& traj, double t, const State& y, const State& f) const {
        Sample s{t, config_at(y), f};
        if (!traj.samples.empty() && !(t > traj.samples.back().t)) {
            traj.samples.back() = std::move(s);
        } else {
            traj.samples.push_back(std::move(s));
        }
    }

    EquationKind equation_;
    IntegratorParams params_;
    VortexConfiguration base_;
    std::vector<char> alive_;
    std::vector<int> degrees_;
};

}  // namespace

Trajectory integrate(EquationKind equation, const VortexConfiguration& initial, const IntegratorParams& params) {
    return Integrator(equation, initial, params).run();
}

std::vector<Complex> Trajectory::positions_at(double t) const {
    if (samples.empty()) throw std::out_of_range("empty trajectory");
    if (t <= samples.front().t) {
        std::vector<Complex> out;
        for (const Vortex& v : samples.front().config.vortices()) out.push_back(v.position);
        return out;
    }
    auto it = std::upper_bound(samples.begin(), samples.end(), t, [](double x, const Sample& s) { return x < s.t; });
    if (it == samples.end()) {
        std::vector<Complex> out;
        for (const Vortex& v : samples.back().config.vortices()) out.push_back(v.position);
        return out;
    }
    const Sample& b = *it;
    const Sample& a = *(it - 1);
    const double h = b.t - a.t;
    const double s = (t - a.t) / h;
    std::vector<Complex> out(a.config.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        // Arrival slope at b is approximated by b's departure slope, which
        // only differs at event samples where the vortex stops.
        const Complex fb = b.config[j].alive ? b.velocity[j] : Complex{};
        out[j] = hermite(a.config[j].position, a.velocity[j], b.config[j].position, fb, h, s);
    }
    return out;
}

}  // namespace glvortex
