#pragma once

#include <complex>

namespace thetacover {

using Complex = std::complex<double>;

/// Lattice data for the odd theta function with purely imaginary modulus iT.
///
/// The period lattice is Z + iT Z and the nome is q = exp(-pi T).
class ThetaParams {
public:
    explicit ThetaParams(double T);

    double T() const noexcept { return T_; }
    double nome() const noexcept { return q_; }

private:
    double T_;
    double q_;
};

/// Argument reduced into the fundamental rectangle [0,1) x [0,T).
///
/// theta1(x) == multiplier * theta1(x0) where x == x0 + n1 + n2*iT.
struct ReducedArgument {
    Complex x0;
    long n1 = 0;
    long n2 = 0;
    Complex multiplier{1.0, 0.0};
};

ReducedArgument reduce_argument(Complex x, const ThetaParams& params);

/// theta1(x) = 2 q^{1/4} sum_{n>=0} (-1)^n q^{n(n+1)} sin((2n+1) pi x).
///
/// Returns an exact zero within 1e-14 of a lattice point.
Complex theta1(Complex x, const ThetaParams& params);

/// theta1'(x) / theta1(x). Throws PoleProximity within 1e-12 of the lattice.
Complex theta1_logderiv(Complex x, const ThetaParams& params);

/// Distance from x to the nearest point of Z + iT Z.
double lattice_distance(Complex x, double T);

/// Representative of x with imaginary part in [0, T).
Complex canonical_height(Complex x, double T);

inline constexpr double kLatticeZeroTolerance = 1e-14;
inline constexpr double kLatticePoleTolerance = 1e-12;

} // namespace thetacover
