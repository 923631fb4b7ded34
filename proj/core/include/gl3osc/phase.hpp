#pragma once
// Real phases in cycles: the integrand convention everywhere is
// g(x) * e(f(x)) with e(x) = exp(2 pi i x).  A PhaseSpec carries analytic
// derivatives up to order 4 plus the stationary-phase scale parameters
// (Theta_f, Omega_f, Omega_g, Lambda, kappa) of the estimates it feeds.

#include <array>
#include <cmath>
#include <functional>

namespace gl3osc {

struct PhaseSpec {
    std::function<double(double)> f;                    // cycles
    std::array<std::function<double(double)>, 4> df{};  // f' .. f''''

    double theta_f = 0.0;  // |f^(i)| <= theta_f / omega_f^i
    double omega_f = 0.0;
    double omega_g = 1.0;  // |g^(j)| <= 1 / omega_g^j
    double lambda = 0.0;   // min |f'| when supplied
    double kappa = 0.0;    // stationary-point margin

    double operator()(double x) const { return f(x); }
    double deriv(double x, int k) const {
        return k == 0 ? f(x) : df[static_cast<std::size_t>(k - 1)](x);
    }

    // centered finite differences of f (and of each derivative) vs the
    // supplied callables, relative tolerance on sampled points
    bool validate_derivatives(double a, double b, int samples = 24,
                              double rel_tol = 1e-5) const;
};

// polynomial phase c1*x + c2*x^2 (+ c3*x^3), in cycles
PhaseSpec poly_phase(double c1, double c2, double c3 = 0.0);

// 2-D phase with analytic first and second partials (cycles)
struct Phase2D {
    std::function<double(double, double)> f;
    std::function<double(double, double)> fx, fy;
    std::function<double(double, double)> fxx, fyy, fxy;

    bool validate_derivatives(double ax, double bx, double ay, double by,
                              int samples = 12, double rel_tol = 1e-5) const;
};

}  // namespace gl3osc
