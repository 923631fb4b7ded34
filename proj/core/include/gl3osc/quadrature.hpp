#pragma once
// Oscillation-aware adaptive quadrature.
//
// Two engines share the refinement contract "double until two successive
// levels agree within tol/2":
//   * integrate_adaptive      - composite 15-point Gauss-Legendre, panel
//                               count seeded by the cycle estimate and
//                               doubled each level; for cheap integrands
//   * integrate_nested        - composite Clenshaw-Curtis with per-panel
//                               order doubling; CC nodes nest, so function
//                               values are reused across levels (for
//                               integrands that are expensive to evaluate)
// Both throw QuadratureNonConvergence once the node budget is exhausted.

#include <complex>
#include <functional>

#include "gl3osc/errors.hpp"

namespace gl3osc {

using Complex = std::complex<double>;

inline constexpr long long QUAD_DEFAULT_BUDGET = 1LL << 22;

struct OscResult {
    Complex value{0.0, 0.0};
    double err_est = 0.0;    // a posteriori, from the last refinement step
    long long node_count = 0;
};

using Integrand = std::function<Complex(double)>;

OscResult integrate_adaptive(const Integrand& f, double a, double b,
                             double tol, double cycle_hint = 0.0,
                             long long node_budget = QUAD_DEFAULT_BUDGET);

OscResult integrate_nested(const Integrand& f, double a, double b,
                           double tol, double cycle_hint = 0.0,
                           long long node_budget = QUAD_DEFAULT_BUDGET);

// e(x) = exp(2 pi i x); every phase in this library is stored in cycles
Complex unit_phase(double cycles);

}  // namespace gl3osc
