#include "glvortex/potentials.hpp"

#include "glvortex/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace glvortex {

namespace {

constexpr Complex I{0.0, 1.0};

// i ln(a/b) and i ln(a conj(b) / R2^2) sharing one angle difference, so that
// the 2 pi ambiguity of the logarithm shifts both arguments by the same
// period and cancels in zeta(first) - zeta(second).
struct LogPair {
    Complex direct;
    Complex reflected;
};

LogPair log_pair(Complex a, Complex b, double R2) {
    const double dtheta = std::arg(a / b);
    const double ra = std::abs(a);
    const double rb = std::abs(b);
    return {Complex(-dtheta, std::log(ra / rb)), Complex(-dtheta, std::log(ra * rb / (R2 * R2)))};
}

Complex image_point(Complex z, double R2) { return R2 * R2 / std::conj(z); }

double log_radius_sum(const VortexConfiguration& config) {
    const double R2 = config.domain().R2();
    double s = 0.0;
    for (const Vortex& v : config.vortices()) {
        if (v.alive) s += v.degree * std::log(std::abs(v.position) / R2);
    }
    return s;
}

void require_alive(const VortexConfiguration& config, std::size_t j) {
    if (j >= config.size()) throw std::out_of_range("vortex index out of range");
    if (!config[j].alive) throw SingularPoint("vortex " + std::to_string(j) + " is not alive");
}

void require_field_point(const VortexConfiguration& config, Complex z) {
    if (!config.domain().contains(z)) {
        throw SingularPoint("field point outside the domain");
    }
    for (const Vortex& v : config.vortices()) {
        if (v.alive && std::abs(z - v.position) < VortexConfiguration::coincidence_distance) {
            throw SingularPoint("field point coincides with a vortex");
        }
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// DomainGeometry

DomainGeometry DomainGeometry::disk(double R2) {
    if (!(R2 > 0.0) || !std::isfinite(R2)) throw InvalidGeometry("disk requires R2 > 0");
    return {DomainKind::disk, 0.0, R2};
}

DomainGeometry DomainGeometry::annulus(double R1, double R2) {
    if (!(R1 > 0.0) || !(R2 > R1) || !std::isfinite(R2)) {
        throw InvalidGeometry("annulus requires 0 < R1 < R2 (got R1 = " + std::to_string(R1) +
                              ", R2 = " + std::to_string(R2) + ")");
    }
    return {DomainKind::annulus, R1, R2};
}

bool DomainGeometry::contains(Complex z) const noexcept {
    const double r = std::abs(z);
    return r < R2_ && (kind_ == DomainKind::disk || r > R1_);
}

double DomainGeometry::wall_distance(Complex z) const noexcept {
    const double r = std::abs(z);
    const double outer = R2_ - r;
    return kind_ == DomainKind::disk ? outer : std::min(outer, r - R1_);
}

// ---------------------------------------------------------------------------
// VortexConfiguration

VortexConfiguration::VortexConfiguration(DomainGeometry domain, std::vector<Vortex> vortices)
    : domain_(domain), vortices_(std::move(vortices)) {
    if (domain_.is_annulus()) {
        context_ = std::make_shared<const EllipticContext>(make_context(domain_.R1(), domain_.R2(), 1));
    }
    validate();
}

VortexConfiguration::VortexConfiguration(DomainGeometry domain, std::vector<Vortex> vortices,
                                         std::shared_ptr<const EllipticContext> context)
    : domain_(domain), vortices_(std::move(vortices)), context_(std::move(context)) {
    validate();
}

void VortexConfiguration::validate() const {
    for (std::size_t j = 0; j < vortices_.size(); ++j) {
        const Vortex& v = vortices_[j];
        if (v.degree != 1 && v.degree != -1) {
            throw InvalidGeometry("vortex " + std::to_string(j) + " has degree " +
                                  std::to_string(v.degree) + "; only +1 and -1 are supported");
        }
        if (!std::isfinite(v.position.real()) || !std::isfinite(v.position.imag())) {
            throw InvalidGeometry("vortex " + std::to_string(j) + " has a non-finite position");
        }
        if (v.alive && !domain_.contains(v.position)) {
            throw InvalidGeometry("vortex " + std::to_string(j) + " lies outside the domain");
        }
    }
    if (min_pair_distance() < coincidence_distance) {
        throw CoincidentVortices("two living vortices coincide");
    }
}

std::size_t VortexConfiguration::alive_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(vortices_.begin(), vortices_.end(), [](const Vortex& v) { return v.alive; }));
}

VortexConfiguration VortexConfiguration::with_vortices(std::vector<Vortex> vortices) const {
    return VortexConfiguration(domain_, std::move(vortices), context_);
}

VortexConfiguration VortexConfiguration::with_positions(std::span<const Complex> positions) const {
    if (positions.size() != vortices_.size()) {
        throw std::invalid_argument("position count does not match vortex count");
    }
    std::vector<Vortex> next = vortices_;
    for (std::size_t j = 0; j < next.size(); ++j) next[j].position = positions[j];
    return with_vortices(std::move(next));
}

double VortexConfiguration::min_pair_distance() const noexcept {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vortices_.size(); ++i) {
        if (!vortices_[i].alive) continue;
        for (std::size_t k = i + 1; k < vortices_.size(); ++k) {
            if (!vortices_[k].alive) continue;
            best = std::min(best, std::abs(vortices_[i].position - vortices_[k].position));
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Velocities

namespace {

Complex disk_vortex_velocity(const VortexConfiguration& config, std::size_t j) {
    const double R2 = config.domain().R2();
    const Complex zj = config[j].position;
    Complex w{0.0, 0.0};
    for (std::size_t k = 0; k < config.size(); ++k) {
        const Vortex& v = config[k];
        if (!v.alive) continue;
        if (k != j) w += double(v.degree) / (I * (zj - v.position));
        w -= double(v.degree) / (I * (zj - image_point(v.position, R2)));
    }
    return w;
}

Complex annulus_vortex_velocity(const EllipticContext& ctx, const VortexConfiguration& config, std::size_t j,
                                double log_sum) {
    const double R2 = config.domain().R2();
    const Vortex& self = config[j];
    const Complex zj = self.position;
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < config.size(); ++k) {
        const Vortex& v = config[k];
        if (!v.alive || k == j) continue;
        const LogPair u = log_pair(zj, v.position, R2);
        acc += double(v.degree) * (ctx.zeta(u.direct) - ctx.zeta(u.reflected));
    }
    const double rj = std::abs(zj);
    acc -= double(self.degree) * ctx.zeta(Complex(0.0, 2.0 * std::log(rj / R2)));
    acc += 2.0 * I * ctx.eta() / ctx.omega1() * log_sum;
    return acc / zj;
}

}  // namespace

Complex vortex_velocity_conj(const VortexConfiguration& config, std::size_t j) {
    require_alive(config, j);
    if (config.domain().is_annulus()) {
        return annulus_vortex_velocity(*config.context(), config, j, log_radius_sum(config));
    }
    return disk_vortex_velocity(config, j);
}

std::vector<Complex> vortex_velocities_conj(const VortexConfiguration& config) {
    std::vector<Complex> out(config.size(), Complex{0.0, 0.0});
    const bool annulus = config.domain().is_annulus();
    const double log_sum = annulus ? log_radius_sum(config) : 0.0;
    for (std::size_t j = 0; j < config.size(); ++j) {
        if (!config[j].alive) continue;
        out[j] = annulus ? annulus_vortex_velocity(*config.context(), config, j, log_sum) : disk_vortex_velocity(config, j);
    }
    return out;
}

Complex symmetric_velocity_conj(const VortexConfiguration& sector, int copies, std::size_t j) {
    if (!sector.domain().is_annulus()) {
        throw InvalidGeometry("symmetric_velocity_conj expects an annulus configuration");
    }
    require_alive(sector, j);
    const EllipticContext ctx = make_context(sector.domain().R1(), sector.domain().R2(), copies);
    return annulus_vortex_velocity(ctx, sector, j, log_radius_sum(sector));
}

Complex annulus_self_offset(Complex z_j, int n_j) { return I * double(n_j) / (2.0 * z_j); }

Complex field_velocity_conj(const VortexConfiguration& config, Complex z) {
    require_field_point(config, z);
    const double R2 = config.domain().R2();
    if (!config.domain().is_annulus()) {
        Complex w{0.0, 0.0};
        for (const Vortex& v : config.vortices()) {
            if (!v.alive) continue;
            w += double(v.degree) / (I * (z - v.position));
            w -= double(v.degree) / (I * (z - image_point(v.position, R2)));
        }
        return w;
    }
    const EllipticContext& ctx = *config.context();
    Complex acc{0.0, 0.0};
    for (const Vortex& v : config.vortices()) {
        if (!v.alive) continue;
        const LogPair u = log_pair(z, v.position, R2);
        acc += double(v.degree) * (ctx.zeta(u.direct) - ctx.zeta(u.reflected));
    }
    acc += 2.0 * I * ctx.eta() / ctx.omega1() * log_radius_sum(config);
    return acc / z;
}

Complex complex_potential(const VortexConfiguration& config, Complex z) {
    require_field_point(config, z);
    const double R2 = config.domain().R2();
    Complex acc{0.0, 0.0};
    if (!config.domain().is_annulus()) {
        for (const Vortex& v : config.vortices()) {
            if (!v.alive) continue;
            acc += double(v.degree) * (std::log(z - v.position) - std::log(z - image_point(v.position, R2)));
        }
        return -I * acc;
    }
    const EllipticContext& ctx = *config.context();
    const Complex log_z = std::log(z);
    for (const Vortex& v : config.vortices()) {
        if (!v.alive) continue;
        const LogPair u = log_pair(z, v.position, R2);
        acc += double(v.degree) *
               (ctx.log_sigma(u.direct) - ctx.log_sigma(u.reflected) -
                2.0 * ctx.eta() / ctx.omega1() * std::log(std::abs(v.position) / R2) * log_z);
    }
    return -I * acc;
}

double phase_field(const VortexConfiguration& config, Complex z) { return complex_potential(config, z).real(); }

double circle_limit_check(const VortexConfiguration& disk_config, double R1_small) {
    if (disk_config.domain().is_annulus()) {
        throw InvalidGeometry("circle_limit_check expects a disk configuration");
    }
    const VortexConfiguration annulus(DomainGeometry::annulus(R1_small, disk_config.domain().R2()),
                                      std::vector<Vortex>(disk_config.vortices().begin(),
                                                          disk_config.vortices().end()));
    double worst = 0.0;
    for (std::size_t j = 0; j < disk_config.size(); ++j) {
        if (!disk_config[j].alive) continue;
        const Complex d = vortex_velocity_conj(disk_config, j);
        const Complex a = vortex_velocity_conj(annulus, j);
        const double scale = std::abs(d) > 1e-12 ? std::abs(d) : 1.0;
        worst = std::max(worst, std::abs(a - d) / scale);
    }
    return worst;
}

}  // namespace glvortex
