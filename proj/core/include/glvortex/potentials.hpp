#pragma once

#include "glvortex/elliptic.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace glvortex {

enum class DomainKind { disk, annulus };

/// Disk |z| < R2 or annulus R1 < |z| < R2, centred at the origin.
class DomainGeometry {
public:
    static DomainGeometry disk(double R2);
    static DomainGeometry annulus(double R1, double R2);

    DomainKind kind() const noexcept { return kind_; }
    bool is_annulus() const noexcept { return kind_ == DomainKind::annulus; }
    /// Inner radius; 0 for a disk.
    double R1() const noexcept { return R1_; }
    double R2() const noexcept { return R2_; }

    bool contains(Complex z) const noexcept;
    /// Distance from z to the nearest boundary circle (negative outside).
    double wall_distance(Complex z) const noexcept;

    friend bool operator==(const DomainGeometry&, const DomainGeometry&) = default;

private:
    DomainGeometry(DomainKind kind, double R1, double R2) : kind_(kind), R1_(R1), R2_(R2) {}

    DomainKind kind_;
    double R1_;
    double R2_;
};

struct Vortex {
    Complex position;
    int degree = 1;  // +1 or -1
    bool alive = true;

    friend bool operator==(const Vortex&, const Vortex&) = default;
};

/// Living and annihilated vortices in a domain. Annulus configurations carry
/// the single-chain lattice (omega1 = pi, omega2 = i ln(R2/R1)), shared
/// between copies.
class VortexConfiguration {
public:
    /// Throws InvalidGeometry for a degree other than +-1 or a living vortex
    /// outside the domain, CoincidentVortices for living vortices closer than
    /// `coincidence_distance`.
    VortexConfiguration(DomainGeometry domain, std::vector<Vortex> vortices);

    static constexpr double coincidence_distance = 1e-12;

    const DomainGeometry& domain() const noexcept { return domain_; }
    std::span<const Vortex> vortices() const noexcept { return vortices_; }
    std::size_t size() const noexcept { return vortices_.size(); }
    const Vortex& operator[](std::size_t j) const { return vortices_[j]; }
    std::size_t alive_count() const noexcept;

    /// Annulus lattice; null for a disk.
    const EllipticContext* context() const noexcept { return context_.get(); }
    std::shared_ptr<const EllipticContext> shared_context() const noexcept { return context_; }

    /// Same domain and lattice, new positions/flags. Validates like the constructor.
    VortexConfiguration with_vortices(std::vector<Vortex> vortices) const;
    /// Same domain and lattice, new positions for every vortex (alive flags kept).
    VortexConfiguration with_positions(std::span<const Complex> positions) const;

    double min_pair_distance() const noexcept;

    friend bool operator==(const VortexConfiguration& a, const VortexConfiguration& b) {
        return a.domain_ == b.domain_ && a.vortices_ == b.vortices_;
    }

private:
    VortexConfiguration(DomainGeometry domain, std::vector<Vortex> vortices,
                        std::shared_ptr<const EllipticContext> context);
    void validate() const;

    DomainGeometry domain_;
    std::vector<Vortex> vortices_;
    std::shared_ptr<const EllipticContext> context_;
};

/// Regular part of the conjugate velocity at vortex j, with its own
/// singularity removed (zero for an annihilated vortex).
///
/// Disk: sum_{k != j} n_k / (i (z_j - z_k)) - sum_k n_k / (i (z_j - z'_k)),
/// z'_k = R2^2 / conj(z_k).
///
/// Annulus: (1/z_j) sum_{k != j} n_k [zeta(i ln(z_j/z_k)) - zeta(i ln(z_j conj(z_k) / R2^2))]
///          - (n_j / z_j) zeta(2i ln(r_j/R2)) + (2i eta / (omega1 z_j)) sum_k n_k ln(r_k/R2).
/// The self-singularity is removed in the logarithmic variable i ln z, so near
/// a vortex W'(z) - n_j / (i (z - z_j)) tends to this value plus
/// annulus_self_offset(z_j, n_j).
Complex vortex_velocity_conj(const VortexConfiguration& config, std::size_t j);

/// vortex_velocity_conj for every vortex, in index order.
std::vector<Complex> vortex_velocities_conj(const VortexConfiguration& config);

/// Velocity of vortex j in the configuration made of `copies` rotated images
/// of `sector` (angles 2 pi m / copies), evaluated on the reduced lattice
/// omega1 = pi / copies with the sector's vortices only.
Complex symmetric_velocity_conj(const VortexConfiguration& sector, int copies, std::size_t j);

/// i n_j / (2 z_j): the difference between removing a vortex's singularity in
/// the z plane and in the logarithmic variable used by the annulus formula.
Complex annulus_self_offset(Complex z_j, int n_j);

/// Conjugate velocity W'(z) at a field point inside the domain.
/// Throws SingularPoint at a living vortex or outside the domain.
Complex field_velocity_conj(const VortexConfiguration& config, Complex z);

/// Complex potential W(z). The imaginary part of each logarithm is taken on a
/// local branch, so Re W (the phase) is defined modulo 2 pi and an additive
/// constant.
Complex complex_potential(const VortexConfiguration& config, Complex z);

/// Phase field Re W(z), modulo 2 pi and an additive constant.
double phase_field(const VortexConfiguration& config, Complex z);

/// Builds the annulus with inner radius R1_small around the same vortices and
/// returns max_j |W~'_annulus(z_j) - W~'_disk(z_j)| / |W~'_disk(z_j)| (absolute
/// difference where the disk value vanishes).
double circle_limit_check(const VortexConfiguration& disk_config, double R1_small);

}  // namespace glvortex
