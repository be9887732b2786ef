#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "thetacover/theta.hpp"

namespace thetacover {

enum class SurfaceKind { disc, annulus };

/// A genus-zero bordered surface: the disc (one oval) or an annulus (two).
///
/// The annulus is modelled as the strip 0 <= Re x <= 1/2 modulo iT; the
/// concentric-ring radius is r = exp(pi / T).
class SurfaceSpec {
public:
    static SurfaceSpec disc();
    static SurfaceSpec annulus(double T);
    static SurfaceSpec annulus_from_radius(double r);

    SurfaceKind kind() const noexcept { return kind_; }
    bool is_annulus() const noexcept { return kind_ == SurfaceKind::annulus; }
    int genus() const noexcept { return 0; }
    int oval_count() const noexcept { return kind_ == SurfaceKind::annulus ? 2 : 1; }
    // Genus of the Schottky double.
    int double_genus() const noexcept { return 2 * genus() + oval_count() - 1; }

    // Throws InvalidArgument for the disc.
    double T() const;
    double radius() const;

private:
    SurfaceSpec(SurfaceKind kind, double T) : kind_(kind), T_(T) {}

    SurfaceKind kind_;
    double T_;
};

/// Zeros and poles on the two ovals Re x = 0 and Re x = 1/2.
struct HalfPlaneDivisor {
    std::vector<Complex> zeros;
    std::vector<Complex> poles;
};

/// Interior zeros; the poles are the reflections -conj(z). Repeated entries
/// encode multiplicity.
struct DiscDivisor {
    std::vector<Complex> zeros;

    std::vector<Complex> poles() const;
};

/// Real zeros and poles of a rational self-map of the upper half-plane.
struct ClassicalDivisor {
    std::vector<double> zeros;
    std::vector<double> poles;
    // Sign of the scale that makes R orientation preserving (Im R > 0 on H).
    int scale_sign = 1;

    // Sorts both lists and derives scale_sign.
    static ClassicalDivisor make(std::vector<double> zeros, std::vector<double> poles);
};

using AnyDivisor = std::variant<HalfPlaneDivisor, DiscDivisor, ClassicalDivisor>;

enum class DivisorTarget { halfplane, disc, classical };

struct Violation {
    std::string clause;
    std::string message;
};

/// Outcome of validating a divisor. The lattice fields are meaningful for
/// the annulus targets; the classical case has no lattice condition.
struct LatticeReport {
    double condition_value = 0.0;
    long m = 0;
    double deviation = 0.0;
    bool valid = false;
    std::vector<Violation> violations;

    bool structurally_valid() const;
    bool has_violation(const std::string& clause) const;
};

inline constexpr double kOvalTolerance = 1e-9;
inline constexpr double kLatticeTolerance = 1e-8;
inline constexpr std::size_t kMaxDegree = 64;

// Clause names reported by the validators.
namespace clause {
inline constexpr const char* count = "count";
inline constexpr const char* on_oval = "boundary-support";
inline constexpr const char* oval_occupancy = "oval-occupancy";
inline constexpr const char* alternation = "alternation";
inline constexpr const char* coincident = "coincident-points";
inline constexpr const char* interior = "interior-support";
inline constexpr const char* real_support = "real-support";
inline constexpr const char* orientation = "orientation";
inline constexpr const char* lattice_halfplane = "CondH";
inline constexpr const char* lattice_disc = "CondD";
} // namespace clause

/// Which oval (0 for Re x = 0, 1 for Re x = 1/2) the point lies on, if any.
std::optional<int> oval_index(Complex x, double tolerance = kOvalTolerance);

/// Sign s such that s * prod(u - z) / prod(u - p) maps H into H.
int orientation_sign(const std::vector<double>& zeros, const std::vector<double>& poles);

LatticeReport validate_halfplane(const HalfPlaneDivisor& d, const SurfaceSpec& s,
                                 double tolerance = kLatticeTolerance);
LatticeReport validate_disc(const DiscDivisor& d, const SurfaceSpec& s,
                            double tolerance = kLatticeTolerance);
LatticeReport validate_classical(const ClassicalDivisor& d);

/// Imaginary parts reduced into [0, T).
HalfPlaneDivisor canonicalize(const HalfPlaneDivisor& d, const SurfaceSpec& s);
DiscDivisor canonicalize(const DiscDivisor& d, const SurfaceSpec& s);

/// Solves the lattice condition for Im of poles[free_pole], picking the
/// solution nearest its current value. Throws CompletionFailure if the
/// forced position breaks the oval structure.
HalfPlaneDivisor complete_divisor(HalfPlaneDivisor partial, std::size_t free_pole,
                                  const SurfaceSpec& s);

/// Solves the lattice condition for Re of zeros[free_zero], picking the
/// admissible solution (strictly inside the strip) nearest its current value.
DiscDivisor complete_divisor(DiscDivisor partial, std::size_t free_zero, const SurfaceSpec& s);

HalfPlaneDivisor random_halfplane_divisor(std::uint64_t seed, std::size_t n, const SurfaceSpec& s);
DiscDivisor random_disc_divisor(std::uint64_t seed, std::size_t n, const SurfaceSpec& s);
ClassicalDivisor random_classical_divisor(std::uint64_t seed, std::size_t n);

AnyDivisor random_divisor(std::uint64_t seed, std::size_t n, DivisorTarget target,
                          const SurfaceSpec& s);

} // namespace thetacover
