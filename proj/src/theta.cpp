#include "thetacover/theta.hpp"

#include <cmath>
#include <numbers>

#include "thetacover/error.hpp"

namespace thetacover {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxTerms = 64;
constexpr double kRelativeCutoff = 1e-16;

void require_finite(Complex x, const char* what)
{
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
        throw InvalidArgument(std::string(what) + ": non-finite argument");
    }
}

// Representative with Re in [-1/2, 1/2] and Im in [-T/2, T/2]. The series
// is evaluated there: it is the best-conditioned cell and it places every
// lattice zero at the origin, so small arguments keep full relative accuracy.
struct Centered {
    Complex c;
    long n1;
    long n2;
};

Centered center(Complex x, double T)
{
    const double n2 = std::nearbyint(x.imag() / T);
    const double n1 = std::nearbyint(x.real());
    return {Complex(x.real() - n1, x.imag() - n2 * T), static_cast<long>(n1),
            static_cast<long>(n2)};
}

// theta1(x0 + n1 + n2 iT) / theta1(x0).
Complex quasi_period_multiplier(Complex x0, long n1, long n2, double T)
{
    const double sign = ((n1 + n2) % 2 == 0) ? 1.0 : -1.0;
    const double nn = static_cast<double>(n2);
    const Complex exponent(kPi * T * nn * nn + 2.0 * kPi * nn * x0.imag(),
                           -2.0 * kPi * nn * x0.real());
    return sign * std::exp(exponent);
}

struct SeriesValue {
    Complex value;       // sum (-1)^n q^{n(n+1)} sin((2n+1) pi c)
    Complex derivative;  // sum (-1)^n q^{n(n+1)} (2n+1) cos((2n+1) pi c)
};

SeriesValue sum_series(Complex c, double T, bool with_derivative)
{
    SeriesValue out{};
    const double y = std::abs(c.imag());
    for (int n = 0; n < kMaxTerms; ++n) {
        const double k = 2.0 * n + 1.0;
        const double weight = std::exp(-kPi * T * n * (n + 1.0));
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        const Complex arg = k * kPi * c;
        out.value += sign * weight * std::sin(arg);
        if (with_derivative) {
            out.derivative += sign * weight * k * std::cos(arg);
        }
        // Bound on the next term; |sin|, |cos| <= cosh(Im).
        const double kn = 2.0 * n + 3.0;
        const double next = std::exp(-kPi * T * (n + 1.0) * (n + 2.0) + kn * kPi * y) * kn;
        const double floor_value = with_derivative
            ? std::min(std::abs(out.value), std::abs(out.derivative))
            : std::abs(out.value);
        if (next < kRelativeCutoff * floor_value || next < 1e-300) {
            break;
        }
    }
    return out;
}

} // namespace

ThetaParams::ThetaParams(double T) : T_(T), q_(0.0)
{
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw InvalidArgument("theta modulus T must be positive and finite");
    }
    q_ = std::exp(-kPi * T);
}

ReducedArgument reduce_argument(Complex x, const ThetaParams& params)
{
    require_finite(x, "reduce_argument");
    const double T = params.T();
    long n2 = static_cast<long>(std::floor(x.imag() / T));
    long n1 = static_cast<long>(std::floor(x.real()));
    Complex x0(x.real() - static_cast<double>(n1), x.imag() - static_cast<double>(n2) * T);
    // Rounding in the subtraction can land exactly on the upper edge.
    if (x0.imag() >= T) {
        ++n2;
        x0.imag(x0.imag() - T);
    }
    if (x0.imag() < 0.0) {
        --n2;
        x0.imag(x0.imag() + T);
    }
    if (x0.real() >= 1.0) {
        ++n1;
        x0.real(x0.real() - 1.0);
    }
    if (x0.real() < 0.0) {
        --n1;
        x0.real(x0.real() + 1.0);
    }
    return {x0, n1, n2, quasi_period_multiplier(x0, n1, n2, T)};
}

Complex theta1(Complex x, const ThetaParams& params)
{
    require_finite(x, "theta1");
    const Centered r = center(x, params.T());
    if (std::abs(r.c) <= kLatticeZeroTolerance) {
        return {0.0, 0.0};
    }
    const SeriesValue s = sum_series(r.c, params.T(), false);
    const double prefactor = 2.0 * std::exp(-kPi * params.T() / 4.0);
    return quasi_period_multiplier(r.c, r.n1, r.n2, params.T()) * prefactor * s.value;
}

Complex theta1_logderiv(Complex x, const ThetaParams& params)
{
    require_finite(x, "theta1_logderiv");
    const Centered r = center(x, params.T());
    if (std::abs(r.c) <= kLatticePoleTolerance) {
        throw PoleProximity("theta1_logderiv: argument on the period lattice");
    }
    const SeriesValue s = sum_series(r.c, params.T(), true);
    const Complex shift(0.0, -2.0 * kPi * static_cast<double>(r.n2));
    return shift + kPi * s.derivative / s.value;
}

double lattice_distance(Complex x, double T)
{
    return std::abs(center(x, T).c);
}

Complex canonical_height(Complex x, double T)
{
    double y = x.imag() - T * std::floor(x.imag() / T);
    if (y >= T || y < 0.0) {
        y = 0.0;
    }
    return {x.real(), y};
}

} // namespace thetacover
