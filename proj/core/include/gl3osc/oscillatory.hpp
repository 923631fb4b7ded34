#pragma once
// Stationary-phase toolbox: the quadrature oracle, derivative tests,
// Huxley's boundary/stationary expansions, the BKY no-stationary-point
// bound, 2-D second-derivative bounds, the Fourier-Mellin transform
// U^dagger(r,s) = int U(x) e(-rx) x^{s-1} dx with its one-term expansion,
// and the I** = I_1 + I_2 decomposition for the log-pair phase
//   f(x) = (t log|x - ra| + tau log x) / 2pi.

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "gl3osc/phase.hpp"
#include "gl3osc/quadrature.hpp"
#include "gl3osc/weights.hpp"

namespace gl3osc {
namespace osc {

// ---- 1-D --------------------------------------------------------------

// ground-truth oracle for int_a^b g(x) e(f(x)) dx
OscResult quad_osc_1d(const SmoothWeight& g, const PhaseSpec& f, double a,
                      double b, double tol,
                      long long budget = QUAD_DEFAULT_BUDGET);

// Var(g) / min|f^(r)|^{1/r}; throws DegenerateDerivative if the sampled
// minimum vanishes
double derivative_test_bound(const SmoothWeight& g, const PhaseSpec& f,
                             double a, double b, int r);

// first Huxley assertion: boundary terms only, err_est carries the lemma's
// envelope.  Throws StationaryPointInside if f' changes sign.
OscResult huxley_boundary(const SmoothWeight& g, const PhaseSpec& f, double a,
                          double b);

// second Huxley assertion: g(x0) e(f(x0)+1/8)/sqrt(f''(x0)) + boundary
// terms, err_est = Omega_f^4/(Theta^2 kappa^3) + Omega_f/Theta^{3/2}
//                 + Omega_f^3/(Theta^{3/2} Omega_g^2)
OscResult huxley_stationary(const SmoothWeight& g, const PhaseSpec& f,
                            double a, double b);

// |b-a| [ (Omega_f Lambda/sqrt(Theta))^{-A} + (Lambda Omega_g)^{-A} ]
double bky_negligible(const SmoothWeight& g, const PhaseSpec& f, double a,
                      double b, int A = 6);

// ---- 2-D --------------------------------------------------------------

struct Rect {
    double ax, bx, ay, by;
};

struct Weight2D {
    std::function<Complex(double, double)> value;
    std::function<Complex(double, double)> d2xy;  // for var(g)
    static Weight2D from_product(const ProductWeight2D& p);
};

OscResult quad_osc_2d(const Weight2D& g2, const Phase2D& f2, const Rect& rect,
                      double tol, long long budget = QUAD_DEFAULT_BUDGET);

struct Bound2D {
    double p1 = 0.0, p2 = 0.0;  // sqrt(2 pi min fxx), sqrt(2 pi min fyy)
    double var_g = 0.0;         // integral of |d2 g / dx dy|
    double bound = 0.0;         // var_g / (p1 p2)
    bool condition_f_ok = true; // grid check of the determinant condition
};

Bound2D second_deriv_bound_2d(const Weight2D& g2, const Phase2D& f2,
                              const Rect& rect);

// ---- Fourier-Mellin -----------------------------------------------------

Complex fourier_mellin_exact(const SmoothWeight& U, double r,
                             std::complex<double> s, double tol = 1e-10,
                             long long budget = QUAD_DEFAULT_BUDGET);

// one-term stationary expansion
//   sqrt(2pi)/sqrt(|beta|) e(-sgn(beta)/8) (beta/(2 pi e r))^{i beta}
//   U_0(sigma, beta/(2 pi r)),
// exactly 0 when the stationary point beta/(2 pi r) is outside supp U.
// Both signs of beta are served (conjugation symmetry of the transform).
Complex fourier_mellin_main(const SmoothWeight& U, double r,
                            std::complex<double> s);

// ---- log-pair phase machinery -------------------------------------------

struct SpParams {
    std::int64_t q = 1, a = 2, r = -1;
    double t = 0.0, tau = 0.0, N = 0.0;
    double C = 1.0, Q = 1.0;
    double eps = 0.05;

    // throws WindowViolation / Error when outside the standing assumptions
    // (t > 0, t + tau > 0, r != 0, C <= q < 2C, N/t^{1-eps} < Q,
    //  Q < a <= q+Q with gcd(a,q) = 1)
    void check() const;

    double x0() const;      // stationary point  r a tau / (tau + t)
    double tau0() const;    // t / (ra - 1)
    double kappa0() const;  // t^eps sqrt(QC/N)
};

// f(x) = (t log|x - ra| + tau log x)/2pi with exact derivatives and the
// scale parameters Theta_f = |tau|, Omega_f = |tau| QC/N, Omega_g = 1
PhaseSpec sp_phase(const SpParams& p);

// g(x) = U_0(1, t a q/(2 pi N (x - ra))) * V_0(1/2, -tau a q/(2 pi N x))
SmoothWeight sp_weight(const SpParams& p, const SmoothWeight& U,
                       const SmoothWeight& V);

// I**(q,r,tau) = int_0^1 V^dag(Nx/aq, 1/2 - i tau) U^dag(N(ra-x)/aq, 1 - i t) dx
// with both transforms evaluated by fourier_mellin_exact on the quadrature
// grid (values cached per call; the V-factor prunes the U-evaluation).
OscResult istarstar(const SpParams& p, const SmoothWeight& U,
                    const SmoothWeight& V, double tol,
                    long long budget = 1LL << 26);

// module constant c2 of the I_1 main term (calibrated against the oracle;
// see tests); exposed for the calibration check
extern const Complex I1_C2;

// I_1(q,r,tau) = c2 (ra/(t+tau)^{3/2}) (-(t+tau)q/(2 pi e N r))^{-i(t+tau)}
//                V_0(3/2, -q(t+tau)/(2 pi N r))
Complex i1_main(const SpParams& p, const SmoothWeight& V);

// B(C,tau): the four-term error envelope for I_2 = I** - I_1, with the
// E** factor replaced by its closed-form bound
// (1/(sqrt(t) |tau|^{3/2})) min{1, |tau| a q / N}
double b_error_bound(const SpParams& p);

}  // namespace osc
}  // namespace gl3osc
