#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "thetacover/theta.hpp"

namespace thetacover {

/// Coefficients of prod_j (u - root_j), lowest degree first.
std::vector<Complex> poly_from_roots(std::span<const Complex> roots);

Complex poly_eval(std::span<const Complex> coeffs, Complex u);

struct RootOptions {
    double tolerance = 1e-12;
    int max_iterations = 200;
    int max_restarts = 8;
};

/// All roots of a polynomial (lowest degree first, nonzero leading term) by
/// Aberth-Ehrlich simultaneous iteration. Throws NumericalFailure when no
/// restart converges.
std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs, const RootOptions& options = {});

} // namespace thetacover
