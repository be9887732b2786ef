#include "thetacover/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "thetacover/error.hpp"

namespace thetacover {

std::vector<Complex> poly_from_roots(std::span<const Complex> roots)
{
    std::vector<Complex> c{1.0};
    for (const Complex& r : roots) {
        c.push_back(0.0);
        for (std::size_t k = c.size() - 1; k > 0; --k) {
            c[k] = c[k - 1] - r * c[k];
        }
        c[0] = -r * c[0];
    }
    return c;
}

Complex poly_eval(std::span<const Complex> coeffs, Complex u)
{
    Complex acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        acc = acc * u + coeffs[k];
    }
    return acc;
}

namespace {

struct Horner {
    Complex value;
    Complex derivative;
};

Horner horner(std::span<const Complex> c, Complex u)
{
    Complex p = 0.0;
    Complex dp = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) {
        dp = dp * u + p;
        p = p * u + c[k];
    }
    return {p, dp};
}

// Fujiwara-style bound on the root moduli.
double root_radius(std::span<const Complex> c)
{
    const std::size_t n = c.size() - 1;
    const double lead = std::abs(c[n]);
    double bound = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        bound = std::max(bound, std::pow(std::abs(c[k]) / lead, 1.0 / static_cast<double>(n - k)));
    }
    return std::max(bound, 1e-3);
}

bool aberth(std::span<const Complex> c, std::vector<Complex>& z, const RootOptions& options)
{
    const std::size_t n = z.size();
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        double worst = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const Horner h = horner(c, z[k]);
            if (h.value == Complex(0.0)) {
                continue;
            }
            const Complex ratio = h.value / h.derivative;
            Complex repulsion = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != k) repulsion += 1.0 / (z[k] - z[j]);
            }
            const Complex step = ratio / (1.0 - ratio * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
                return false;
            }
            z[k] -= step;
            worst = std::max(worst, std::abs(step) / std::max(1.0, std::abs(z[k])));
        }
        if (worst <= options.tolerance) {
            return true;
        }
    }
    return false;
}

} // namespace

std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs, const RootOptions& options)
{
    if (coeffs.empty() || coeffs.back() == Complex(0.0)) {
        throw InvalidArgument("polynomial_roots: leading coefficient must be nonzero");
    }
    const std::size_t n = coeffs.size() - 1;
    if (n == 0) {
        return {};
    }
    if (n == 1) {
        return {-coeffs[0] / coeffs[1]};
    }
    const double radius = root_radius(coeffs);
    std::vector<Complex> z(n);
    for (int restart = 0; restart <= options.max_restarts; ++restart) {
        // Deterministic start: points on a circle, rotated and rescaled on
        // every restart so a stagnated configuration is not repeated.
        const double angle0 = 0.4 + 0.7 * restart;
        const double scale = radius * (1.0 + 0.15 * restart);
        for (std::size_t k = 0; k < n; ++k) {
            const double a = angle0 + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
            z[k] = std::polar(scale, a);
        }
        if (aberth(coeffs, z, options)) {
            return z;
        }
    }
    std::ostringstream os;
    os << "polynomial_roots: Aberth iteration did not converge for degree " << n << " after "
       << options.max_restarts + 1 << " starts (root radius bound " << radius << ")";
    throw NumericalFailure(os.str());
}

} // namespace thetacover
