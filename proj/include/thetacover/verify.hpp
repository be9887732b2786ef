#pragma once

#include <functional>
#include <string>
#include <vector>

#include "thetacover/covering.hpp"
#include "thetacover/quadrature.hpp"

namespace thetacover {

struct Check {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string details;
};

class VerificationReport {
public:
    void add(Check check) { checks_.push_back(std::move(check)); }
    // pass = measured <= tolerance.
    void add_bound(std::string name, double measured, double tolerance, std::string details = {});
    void append(const VerificationReport& other);

    const std::vector<Check>& checks() const noexcept { return checks_; }
    const Check* find(const std::string& name) const;
    bool overall() const;

private:
    std::vector<Check> checks_;
};

/// Integral of the differential along the contour. Closed contours passing
/// within 1e-3 of a pole are shifted sideways first; open ones throw
/// ContourTooClose.
Complex period_integral(const EtaDifferential& d, const Contour& contour,
                        const QuadratureOptions& options = {});

/// Cauchy principal value along a contour whose segments may run through
/// simple poles. Each pole is bypassed on a semicircle of radius 1e-4 and
/// the half residue i pi r is added back.
Complex principal_value_integral(const EtaDifferential& d, const Contour& contour,
                                 const QuadratureOptions& options = {});

inline constexpr double kExcisionRadius = 1e-4;
inline constexpr double kContourClearance = 1e-3;

using ComplexFunction = std::function<Complex(Complex)>;

/// Total change of arg f along the contour, tracked with adaptive steps of
/// phase change below pi/2.
double argument_increment(const ComplexFunction& f, const Contour& contour);

/// argument_increment / 2 pi rounded; throws NumericalFailure if the image
/// curve is not closed.
long winding_number(const ComplexFunction& f, const Contour& contour);

/// Lemma-style reciprocity on the torus, poles on the ovals: the oval
/// periods vanish and the period over x -> x-1 equals 2 pi i Re int_p^z dx/(iT).
VerificationReport check_reciprocity_case_i(Complex z, Complex p, const SurfaceSpec& s,
                                            double tolerance = 1e-7);

/// Poles z and -conj(z): the period over x -> x+1 vanishes and the
/// downward oval period equals -pi i Im int_p^z 2i dx along a
/// mirror-symmetric path that does not cross that oval.
VerificationReport check_reciprocity_case_ii(Complex z, const SurfaceSpec& s,
                                             double tolerance = 1e-7);

/// Boundary behaviour: real (resp. unimodular) values on the boundary,
/// closure of each oval image, and interior probes in the target.
VerificationReport boundary_check(const CoveringMap& map, int samples, double tolerance = 1e-9);

/// max |h(x + shift) - h(x)| / (1 + |h(x)|) over deterministic strip samples.
double periodicity_defect(const CoveringMap& map, Complex shift, int samples = 64);

/// Number of solutions of h(x) = target (Im target > 0) in the strip, by the
/// argument principle. Targets within about 0.1 of the real axis make the
/// image curve turn too sharply for the sampling to be trusted.
long preimage_count(const HalfPlaneCover& map, Complex target = Complex(0.0, 1.0));

/// Winding of h over both ovals, each oriented as the boundary of the strip.
long boundary_winding(const DiscCover& map);

/// Residues, integrality of both periods and, for half-plane covers, the
/// identity (period over x -> x-1) = 2 pi i m.
VerificationReport check_eta(const CoveringMap& map, double tolerance = 1e-8);

/// l(R(u)) = B(l(u)) on a grid of the closed upper half-plane and |a_j| < 1.
VerificationReport check_composition(const RationalCover& map, double tolerance = 1e-8);

/// Everything above that applies to the map's kind.
VerificationReport verify_map(const CoveringMap& map, double tolerance = 1e-8);

} // namespace thetacover
