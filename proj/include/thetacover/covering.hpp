#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <variant>
#include <vector>

#include "thetacover/divisor.hpp"
#include "thetacover/theta.hpp"

namespace thetacover {

/// A point of the extended complex plane: finite, or the point at infinity.
class Extended {
public:
    Extended(Complex z) : value_(z) {}  // NOLINT: finite values convert implicitly
    static Extended infinity() { return Extended(); }

    bool is_infinite() const noexcept { return infinite_; }
    // Undefined for the point at infinity (returns NaN).
    Complex value() const noexcept { return value_; }

private:
    Extended() : value_(std::numeric_limits<double>::quiet_NaN(), 0.0), infinite_(true) {}

    Complex value_;
    bool infinite_ = false;
};

/// Value num/den kept in homogeneous form so zeros and poles stay finite.
struct Projective {
    Complex num;
    Complex den;

    Extended value() const;
};

enum class MapKind { annulus_halfplane, annulus_disc, classical_rational, classical_blaschke };

/// Annulus -> closed upper half-plane,
/// h(x) = c exp(-2 pi i m x) prod theta1(x - z_j) / theta1(x - p_j),
/// with the real constant c fixed by h(v) = 1 at a boundary point v.
class HalfPlaneCover {
public:
    // Throws ConstructionError unless the divisor validates.
    static HalfPlaneCover create(const HalfPlaneDivisor& divisor, const SurfaceSpec& surface);
    // Skips the lattice-condition check (m is the nearest integer). Used to
    // probe what goes wrong when the condition is broken.
    static HalfPlaneCover create_unchecked(const HalfPlaneDivisor& divisor, const SurfaceSpec& surface);

    Extended evaluate(Complex x) const { return evaluate_projective(x).value(); }
    Projective evaluate_projective(Complex x) const;

    const HalfPlaneDivisor& divisor() const noexcept { return divisor_; }
    const SurfaceSpec& surface() const noexcept { return surface_; }
    long m() const noexcept { return m_; }
    Complex reference_point() const noexcept { return v_; }
    double scale() const noexcept { return scale_; }
    std::size_t degree() const noexcept { return divisor_.zeros.size(); }

private:
    HalfPlaneCover(HalfPlaneDivisor divisor, const SurfaceSpec& surface, long m);
    Projective raw(Complex x) const;
    void choose_reference_point();

    HalfPlaneDivisor divisor_;
    SurfaceSpec surface_;
    ThetaParams theta_;
    long m_;
    Complex v_{0.0, 0.0};
    double scale_ = 1.0;
};

/// Annulus -> closed unit disc, h(x) = phase * prod theta1(x - z_j) / theta1(x + conj z_j).
class DiscCover {
public:
    static DiscCover create(const DiscDivisor& divisor, const SurfaceSpec& surface,
                            Complex phase = 1.0);
    static DiscCover create_unchecked(const DiscDivisor& divisor, const SurfaceSpec& surface,
                                      Complex phase = 1.0);

    Extended evaluate(Complex x) const { return evaluate_projective(x).value(); }
    Projective evaluate_projective(Complex x) const;

    const DiscDivisor& divisor() const noexcept { return divisor_; }
    const SurfaceSpec& surface() const noexcept { return surface_; }
    Complex phase() const noexcept { return phase_; }
    std::size_t degree() const noexcept { return divisor_.zeros.size(); }

private:
    DiscCover(DiscDivisor divisor, const SurfaceSpec& surface, Complex phase);

    DiscDivisor divisor_;
    SurfaceSpec surface_;
    ThetaParams theta_;
    Complex phase_;
};

/// Real rational self-cover of the upper half-plane,
/// R(u) = scale * prod (u - z_j) / (u - p_j). The sign of the scale is fixed
/// so that Im R > 0 on the open upper half-plane.
class RationalCover {
public:
    static RationalCover create(const ClassicalDivisor& divisor, double scale = 1.0);

    Extended evaluate(Extended u) const;
    Extended evaluate(Complex u) const { return evaluate_projective(u).value(); }
    Projective evaluate_projective(Complex u) const;

    const ClassicalDivisor& divisor() const noexcept { return divisor_; }
    double scale() const noexcept { return scale_; }
    std::size_t degree() const noexcept { return divisor_.zeros.size(); }

private:
    RationalCover(ClassicalDivisor divisor, double scale) : divisor_(std::move(divisor)), scale_(scale) {}

    ClassicalDivisor divisor_;
    double scale_;
};

/// Finite Blaschke product B(w) = phase * prod (w - a_j) / (1 - conj(a_j) w).
class BlaschkeCover {
public:
    // Throws ConstructionError unless every |a_j| < 1.
    static BlaschkeCover create(std::vector<Complex> zeros, Complex phase = 1.0);

    Extended evaluate(Extended w) const;
    Extended evaluate(Complex w) const { return evaluate_projective(w).value(); }
    Projective evaluate_projective(Complex w) const;

    const std::vector<Complex>& zeros() const noexcept { return zeros_; }
    Complex phase() const noexcept { return phase_; }
    std::size_t degree() const noexcept { return zeros_.size(); }

private:
    BlaschkeCover(std::vector<Complex> zeros, Complex phase) : zeros_(std::move(zeros)), phase_(phase) {}

    std::vector<Complex> zeros_;
    Complex phase_;
};

using CoveringMap = std::variant<HalfPlaneCover, DiscCover, RationalCover, BlaschkeCover>;

MapKind kind(const CoveringMap& map);
Extended evaluate(const CoveringMap& map, Complex x);
Projective evaluate_projective(const CoveringMap& map, Complex x);
std::size_t degree(const CoveringMap& map);

/// l(u) = (u - i)/(u + i): closed upper half-plane onto the closed unit disc.
Extended mobius_l(Extended u);
Extended mobius_l_inv(Extended w);

/// Conjugates R by l. Zeros of the result are l(R^{-1}(i)), found as roots
/// of scale*prod(u - z) - i*prod(u - p). Throws NumericalFailure if the
/// root finder does not converge.
BlaschkeCover rational_to_blaschke(const RationalCover& map);

/// Strip model -> ring 1 <= |u| <= r, u = exp(2 pi x / T).
Complex strip_to_ring(Complex x, const SurfaceSpec& s);
/// Inverse branch with Im x in [0, T). Throws InvalidArgument for u = 0.
Complex ring_to_strip(Complex u, const SurfaceSpec& s);

// Cohomology generators of the annulus double as coefficients of dx:
// drho = dx/(iT) is dual to the oval cycle, dzeta = 2i dx to the relative
// cycle joining the ovals.
Complex rho_coefficient(double T);
inline constexpr Complex kZetaCoefficient{0.0, 2.0};

/// Meromorphic differential f(x) dx on the torus C/(Z + iTZ) with
/// f(x) = kappa + sum_j [theta1'/theta1(x - z_j) - theta1'/theta1(x - p_j)].
class EtaDifferential {
public:
    struct Singularity {
        Complex point;
        double residue;
    };

    EtaDifferential(std::vector<std::pair<Complex, Complex>> pairs, Complex kappa, const SurfaceSpec& surface);

    // Throws PoleProximity within 1e-6 of a singular point.
    Complex operator()(Complex x) const;
    // No proximity guard (only the 1e-12 lattice guard of theta1_logderiv).
    Complex coefficient_unchecked(Complex x) const;

    const std::vector<std::pair<Complex, Complex>>& pairs() const noexcept { return pairs_; }
    Complex kappa() const noexcept { return kappa_; }
    const SurfaceSpec& surface() const noexcept { return surface_; }
    std::vector<Singularity> singularities() const;
    // Distance from x to the nearest image of a singular point.
    double distance_to_singularities(Complex x) const;

private:
    std::vector<std::pair<Complex, Complex>> pairs_;
    Complex kappa_;
    SurfaceSpec surface_;
    ThetaParams theta_;
};

inline constexpr double kEtaPoleProximity = 1e-6;

Complex eval_eta(const EtaDifferential& d, Complex x);

/// dlog h for an annulus cover (kappa = -2 pi i m, resp. 0).
EtaDifferential eta_h(const HalfPlaneCover& map);
EtaDifferential eta_h(const DiscCover& map);
EtaDifferential eta_h(const CoveringMap& map);

/// Fixes kappa so that both fundamental periods (over x -> x+1 and
/// x -> x+iT) are purely imaginary. Periods are computed by quadrature.
EtaDifferential normalize_eta(const std::vector<std::pair<Complex, Complex>>& pairs,
                              const SurfaceSpec& s);

} // namespace thetacover
