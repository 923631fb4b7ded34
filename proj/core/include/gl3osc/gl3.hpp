#pragma once
// GL(3) archimedean data and summation formulas: Langlands parameters,
// the gamma factors
//   gamma_l(s) = (pi^{-3s-3/2}/2) prod_i Gamma((1+s+a_i+l)/2)/Gamma((-s-a_i+l)/2),
//   gamma_pm = gamma_0 -+ i gamma_1,
// coefficient tables (file ingestion and the degenerate d3 form), the
// Hankel-type transform H_pm, a Voronoi-identity checker and the
// approximate functional equation evaluated on the critical line.

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gl3osc/quadrature.hpp"
#include "gl3osc/weights.hpp"

namespace gl3osc {
namespace gl3 {

using std::int64_t;

struct GL3Params {
    double nu1 = 1.0 / 3.0, nu2 = 1.0 / 3.0;
    std::array<Complex, 3> alpha{};  // sums to 0

    GL3Params dual() const;  // parameters (-a3, -a2, -a1)
};

GL3Params langlands(double nu1, double nu2);

// l in {0,1}; throws PoleEncountered at uncancelled numerator poles
Complex gamma_ell(Complex s, int ell, const GL3Params& p);
// sign = +1 or -1: gamma_0(s) -+ i gamma_1(s)
Complex gamma_pm(Complex s, int sign, const GL3Params& p);

// Phi_pm(tau) = gamma_pm(-1/2 + i tau) (|tau|/(e pi))^{-3 i tau}, |tau| >= 2
Complex stirling_phi(double tau, int sign, const GL3Params& p);

// ---- coefficient tables --------------------------------------------------

struct CoefficientTable {
    GL3Params params;
    std::map<std::pair<int64_t, int64_t>, Complex> entries;
    int64_t max_norm = 0;  // largest n1^2 n2 present
    bool selfdual = false;
    bool cuspidal = false;
    std::string source;

    bool has(int64_t n1, int64_t n2) const;
    Complex lambda(int64_t n1, int64_t n2) const;  // 0 when absent
};

// Plain-text format: header lines "#nu1 <real>", "#nu2 <real>",
// "#selfdual <0|1>" (optional "#cuspidal <0|1>", default 1), then data
// lines "n1 n2 re im".  Duplicate (n1,n2) is a FormatError; lambda(1,1)
// must equal 1 (NormalizationError otherwise).
CoefficientTable load_coefficients(const std::string& path);
// writer emits 17 significant digits; load(write(t)) reproduces t exactly
void write_coefficients(const CoefficientTable& t, const std::string& path);

// degenerate check form: alpha = (0,0,0), lambda(1,n) = lambda(n,1) = d3(n)
CoefficientTable d3_table(int64_t n_max);

// sum_{n1^2 n2 <= x} |lambda(n2,n1)|^2 / x
double ramanujan_avg(const CoefficientTable& t, double x);

// ---- H_pm and Voronoi ------------------------------------------------------

struct HOptions {
    double contour_sigma = 0.5;
    double tau_max = 300.0;
    double tol = 1e-10;
};

// H_pm(y) = (1/2 pi i) int_(sigma) y^{-s} gamma_pm(s) htilde(-s) ds with the
// Mellin transform htilde done by the oscillatory engine; the truncation
// tail estimate is folded into err_est
struct HValue {
    Complex value;
    double err_est = 0.0;
};
HValue h_pm(double y, const SmoothWeight& h, int sign, const GL3Params& p,
            const HOptions& opt = {});

// batch evaluation on a shared contour grid (used by the Voronoi side)
std::vector<HValue> h_pm_batch(const std::vector<double>& ys,
                               const SmoothWeight& h, int sign,
                               const GL3Params& p, const HOptions& opt = {});

struct VoronoiResult {
    Complex lhs{0.0, 0.0};
    Complex rhs{0.0, 0.0};
    double residual = 0.0;
    double budget = 0.0;  // quadrature + truncation error budget
    int64_t dual_terms = 0;
};

// lhs = sum lambda(1,n) e(an/q) h(n)
// rhs = q sum_pm sum_{n1|q} sum_{n2} lambda(n2,n1)/(n1 n2) S(abar,+-n2;q/n1)
//         H_pm(n1^2 n2 / q^3)
// Refuses non-cuspidal tables (polar corrections are out of contract).
VoronoiResult voronoi_check(const CoefficientTable& t, int64_t a, int64_t q,
                            const SmoothWeight& h, const HOptions& opt = {});

namespace detail {
// rhs machinery without the cuspidal guard, for diagnostic oracles that
// supply their own polar corrections
VoronoiResult voronoi_sides(const CoefficientTable& t, int64_t a, int64_t q,
                            const SmoothWeight& h, const HOptions& opt);
}  // namespace detail

// ---- approximate functional equation ---------------------------------------

struct AFEConfig {
    Complex s{0.5, 0.0};
    // even holomorphic factor with G(0)=1, bounded on |Re u| <= 4
    std::function<Complex(Complex)> G;
    double contour_sigma = 3.0;
    int64_t truncation = 0;  // 0: adaptive up to the table depth
    double tol = 1e-9;
};

// G(u) = exp(u^2)
std::function<Complex(Complex)> afe_gaussian_g();
// exp(u^2) * ((u^2-(1-s)^2)/(-(1-s)^2))^3 * ((u^2-s^2)/(-s^2))^3:
// even, G(0)=1, vanishes to third order at u = +-(1-s) and u = +-s, which
// annihilates both polar residues of the zeta^3 check form
std::function<Complex(Complex)> afe_polekill_g(Complex s);

struct AFEResult {
    Complex value{0.0, 0.0};
    double err_est = 0.0;
    std::string warning;
};

AFEResult afe_value(const CoefficientTable& t, const GL3Params& p,
                    const AFEConfig& cfg);

}  // namespace gl3
}  // namespace gl3osc
