#pragma once
// End-to-end objects: S(N) by direct summation, the circle-method split
// S(N) = S+(N) + S-(N) evaluated at desk scale, the Poisson identity for
// the r-sum, the per-J assembly of S(N,C) into S_1 + S_2, the K-integral
// envelope check, and the empirical bound scan.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "gl3osc/gl3.hpp"
#include "gl3osc/oscillatory.hpp"
#include "gl3osc/phase.hpp"
#include "gl3osc/weights.hpp"

namespace gl3osc {
namespace pipeline {

using std::int64_t;

struct PipelineConfig {
    double N = 500.0;
    double t = 20.0;  // > 0
    int64_t Q = 3;
    double eps = 0.05;
    double r_max_factor = 1.0;  // truncates |r| <= factor * q t^{1+eps}/N
    double n_max_factor = 1.0;  // truncates n1^2 n2 <= factor * N^2 t^eps / Q^3
    double quad_tol = 1e-8;
    long long node_budget = 1LL << 30;
    unsigned workers = 0;  // 0: hardware concurrency

    double t_eps() const;                 // t^eps
    double r_max(int64_t q) const;        // dual r cutoff for modulus q
    double n_norm_max() const;            // n1^2 n2 cutoff
    void check_window() const;            // N/t^{1-eps} < Q < sqrt(N)
    void check_desk_guard() const;        // N <= 2000, Q <= 8
};

// S(N) = sum lambda(1,n) n^{-it} V(n/N); requires table depth >= 3N
Complex s_direct(const gl3::CoefficientTable& table, const PipelineConfig& cfg,
                 const SmoothWeight& V);

// ---- Poisson dual of the r-sum -------------------------------------------
struct PoissonCheck {
    Complex lhs{0.0, 0.0};
    Complex rhs{0.0, 0.0};
    double residual = 0.0;
    double tail_budget = 0.0;
    int64_t dual_terms = 0;
};

// lhs = sum_{r>=1} r^{-it} e(r abar/q) e(-r x/(aq)) U(r/N)
// rhs = N^{1-it} sum_{r = -abar mod q} U^dag(N(ra+x)/(aq), 1-it)
PoissonCheck poisson_r_check(int64_t q, int64_t a, double x,
                             const PipelineConfig& cfg, const SmoothWeight& U);

// ---- circle-method split ---------------------------------------------------
struct SPlusMinus {
    Complex s_plus{0.0, 0.0};
    Complex s_minus{0.0, 0.0};
    Complex total{0.0, 0.0};
    long long node_count = 0;
};

SPlusMinus s_pm_circle(const gl3::CoefficientTable& table,
                       const PipelineConfig& cfg, const SmoothWeight& U,
                       const SmoothWeight& V);

// ---- S(N,C) assembly -------------------------------------------------------
struct SncTerm {
    double J = 0.0;
    Complex s1{0.0, 0.0};   // I_1 route
    Complex s2{0.0, 0.0};   // I_2 = I** - I_1 route
    Complex star{0.0, 0.0}; // direct I** route
};

struct SncResult {
    std::vector<SncTerm> terms;
    Complex s1_total{0.0, 0.0}, s2_total{0.0, 0.0}, star_total{0.0, 0.0};
    double recon_residual = 0.0;  // |(s1+s2) - star|
    long long node_count = 0;
};

SncResult snc_assemble(const gl3::CoefficientTable& table,
                       const PipelineConfig& cfg, double C,
                       const SmoothWeight& U, const SmoothWeight& V);

// ---- K integral -------------------------------------------------------------
struct KConfig {
    int64_t q1 = 4, q2 = 4, r1 = -1, r2 = -1;
    int64_t n2 = 0;
    double L = 1.0;
    double J1 = 50.0, J2 = 50.0;
    double y = 0.0;  // Fourier-inversion parameter of the explicit phase
};

// the explicit two-variable phase of the K-integral analysis at fixed y,
// with analytic first and second partials
Phase2D k_phase(const KConfig& kc, const PipelineConfig& cfg);

struct KCheck {
    Complex value{0.0, 0.0};
    double bstar = 0.0;
    double ratio = 0.0;
    long long node_count = 0;
};

// K over [J1,4J1/3] x [J2,4J2/3] with weight
// Phi_+(tau1) conj Phi_+(tau2) W_J(q1,r1,tau1) W_J(q2,r2,tau2), the dual
// kernel U^dag(n2 L/(q1 q2), i(tau2-tau1)) evaluated exactly, against
// B*(C,n2)
KCheck k_integral_check(const KConfig& kc, const PipelineConfig& cfg,
                        const SmoothWeight& U, const SmoothWeight& V,
                        double tol = 1e-12);

// W_J(q,r,tau) = t (t+tau)^{-3/2} W_J(tau) V_0(3/2, -q(t+tau)/(2 pi N r))
double wj_qr_weight(double tau, const SmoothWeight& wj, int64_t q, int64_t r,
                    const PipelineConfig& cfg, const SmoothWeight& V);

// ---- bound scan --------------------------------------------------------------
struct ScanRow {
    double N = 0.0, t = 0.0;
    int64_t Q = 0;
    bool window_ok = true;
    double s_abs = 0.0;
    double envelope = 0.0;  // N^{3/4} t^{3/10}
    double ratio = 0.0;
    int64_t terms = 0;
};

struct ScanReport {
    std::vector<ScanRow> rows;
    std::uint64_t seed = 0;
    double t = 0.0;
    double r_max_factor = 1.0, n_max_factor = 1.0;
    int schema_version = 1;
};

ScanReport bound_scan(const gl3::CoefficientTable& table, double t,
                      const std::vector<double>& n_grid,
                      const PipelineConfig& base);

}  // namespace pipeline
}  // namespace gl3osc
