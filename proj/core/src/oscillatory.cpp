#include "gl3osc/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "gl3osc/arith.hpp"
#include "gl3osc/errors.hpp"

namespace gl3osc {

namespace {
constexpr double TWO_PI = 6.283185307179586476925286766559;

double fd_derivative(const std::function<double(double)>& fn, double x,
                     double scale) {
    // 5-point centered stencil
    double h = std::max(1e-7, 1e-4 * scale);
    double f1 = fn(x + h), f_1 = fn(x - h);
    double f2 = fn(x + 2 * h), f_2 = fn(x - 2 * h);
    return (8.0 * (f1 - f_1) - (f2 - f_2)) / (12.0 * h);
}
}  // namespace

bool PhaseSpec::validate_derivatives(double a, double b, int samples,
                                     double rel_tol) const {
    double scale = (b - a);
    for (int i = 0; i <= samples; ++i) {
        double x = a + (b - a) * (i + 0.5) / (samples + 1);
        for (int k = 1; k <= 4; ++k) {
            if (!df[static_cast<std::size_t>(k - 1)]) return false;
            auto lower = [&](double y) { return deriv(y, k - 1); };
            double fd = fd_derivative(lower, x, scale);
            double an = deriv(x, k);
            double ref = std::max({std::abs(an), std::abs(fd), 1e-8});
            if (std::abs(fd - an) > rel_tol * ref * 10.0 &&
                std::abs(fd - an) > 1e-6 * ref)
                return false;
        }
    }
    return true;
}

PhaseSpec poly_phase(double c1, double c2, double c3) {
    PhaseSpec p;
    p.f = [=](double x) { return x * (c1 + x * (c2 + x * c3)); };
    p.df[0] = [=](double x) { return c1 + x * (2 * c2 + 3 * c3 * x); };
    p.df[1] = [=](double x) { return 2 * c2 + 6 * c3 * x; };
    p.df[2] = [=](double) { return 6 * c3; };
    p.df[3] = [=](double) { return 0.0; };
    return p;
}

bool Phase2D::validate_derivatives(double ax, double bx, double ay, double by,
                                   int samples, double rel_tol) const {
    double sx = bx - ax, sy = by - ay;
    for (int i = 0; i <= samples; ++i) {
        for (int j = 0; j <= samples; ++j) {
            double x = ax + sx * (i + 0.5) / (samples + 1);
            double y = ay + sy * (j + 0.5) / (samples + 1);
            auto fx_of_x = [&](double u) { return f(u, y); };
            auto fy_of_y = [&](double v) { return f(x, v); };
            auto fxx_of_x = [&](double u) { return fx(u, y); };
            auto fyy_of_y = [&](double v) { return fy(x, v); };
            auto fxy_of_y = [&](double v) { return fx(x, v); };
            struct Check {
                double an, fd;
            } checks[] = {
                {fx(x, y), fd_derivative(fx_of_x, x, sx)},
                {fy(x, y), fd_derivative(fy_of_y, y, sy)},
                {fxx(x, y), fd_derivative(fxx_of_x, x, sx)},
                {fyy(x, y), fd_derivative(fyy_of_y, y, sy)},
                {fxy(x, y), fd_derivative(fxy_of_y, y, sy)},
            };
            for (const auto& c : checks) {
                double ref = std::max({std::abs(c.an), std::abs(c.fd), 1e-8});
                if (std::abs(c.an - c.fd) > rel_tol * ref * 10.0 &&
                    std::abs(c.an - c.fd) > 1e-6 * ref)
                    return false;
            }
        }
    }
    return true;
}

namespace osc {

namespace {

double grid_min_abs(const std::function<double(double)>& fn, double a, double b,
                    int n = 1024) {
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
        double x = a + (b - a) * i / n;
        m = std::min(m, std::abs(fn(x)));
    }
    return m;
}

bool sign_change(const std::function<double(double)>& fn, double a, double b,
                 double* where, int n = 1024) {
    double prev = fn(a);
    for (int i = 1; i <= n; ++i) {
        double x = a + (b - a) * i / n;
        double cur = fn(x);
        if (prev == 0.0 || (prev < 0.0) != (cur < 0.0)) {
            if (where) *where = x;
            return true;
        }
        prev = cur;
    }
    return false;
}

double estimate_cycles(const PhaseSpec& f, double a, double b, int n = 64) {
    // trapezoid of |f'| = total phase variation in cycles
    double s = 0.0;
    double h = (b - a) / n;
    double prev = std::abs(f.deriv(a, 1));
    for (int i = 1; i <= n; ++i) {
        double cur = std::abs(f.deriv(a + i * h, 1));
        s += 0.5 * (prev + cur) * h;
        prev = cur;
    }
    return s;
}

Complex boundary_term(const SmoothWeight& g, const PhaseSpec& f, double x) {
    double gv = g.value(x);
    double fp = f.deriv(x, 1);
    if (gv == 0.0) return {0.0, 0.0};
    if (fp == 0.0)
        throw Error("huxley: f' vanishes at an endpoint with g != 0");
    return gv * unit_phase(f(x)) / Complex{0.0, TWO_PI * fp};
}

void require_scales(const PhaseSpec& f, const char* who) {
    if (!(f.theta_f > 0.0) || !(f.omega_f > 0.0) || !(f.omega_g > 0.0))
        throw Error(std::string(who) +
                    ": PhaseSpec scale parameters (theta_f, omega_f, omega_g) "
                    "must be set");
}

}  // namespace

OscResult quad_osc_1d(const SmoothWeight& g, const PhaseSpec& f, double a,
                      double b, double tol, long long budget) {
    if (!(tol > 0.0)) throw Error("quad_osc_1d: tol must be > 0");
    auto integrand = [&](double x) { return g.value(x) * unit_phase(f(x)); };
    return integrate_adaptive(integrand, a, b, tol, estimate_cycles(f, a, b),
                              budget);
}

double derivative_test_bound(const SmoothWeight& g, const PhaseSpec& f,
                             double a, double b, int r) {
    if (r < 1 || r > 4) throw Error("derivative_test_bound: r in 1..4");
    double m = grid_min_abs([&](double x) { return f.deriv(x, r); }, a, b);
    if (!(m > 0.0))
        throw DegenerateDerivative("derivative_test_bound: min |f^(r)| = 0 on grid");
    return g.total_variation(a, b) / std::pow(m, 1.0 / r);
}

OscResult huxley_boundary(const SmoothWeight& g, const PhaseSpec& f, double a,
                          double b) {
    require_scales(f, "huxley_boundary");
    if (f.omega_f < (b - a) / 16.0)
        throw Error("huxley_boundary: hypothesis Omega_f >> (b-a) fails");
    double where = 0.0;
    if (sign_change([&](double x) { return f.deriv(x, 1); }, a, b, &where))
        throw StationaryPointInside("huxley_boundary: f' changes sign near x=" +
                                    std::to_string(where));
    double lam = grid_min_abs([&](double x) { return f.deriv(x, 1); }, a, b);
    OscResult res;
    res.value = boundary_term(g, f, b) - boundary_term(g, f, a);
    double ratio_f = f.theta_f / f.omega_f;  // scale of f'
    res.err_est = f.theta_f / (f.omega_f * f.omega_f * lam * lam * lam) *
                  (1.0 + f.omega_f / f.omega_g +
                   (f.omega_f * f.omega_f) / (f.omega_g * f.omega_g) *
                       (lam / ratio_f));
    res.node_count = 0;
    return res;
}

OscResult huxley_stationary(const SmoothWeight& g, const PhaseSpec& f,
                            double a, double b) {
    require_scales(f, "huxley_stationary");
    if (f.omega_f < (b - a) / 16.0)
        throw Error("huxley_stationary: hypothesis Omega_f >> (b-a) fails");

    // locate the - to + crossing of f'
    const int n = 2048;
    double x_lo = 0.0, x_hi = 0.0;
    int crossings = 0;
    double prev = f.deriv(a, 1);
    for (int i = 1; i <= n; ++i) {
        double x = a + (b - a) * i / n;
        double cur = f.deriv(x, 1);
        if (prev < 0.0 && cur >= 0.0) {
            ++crossings;
            x_lo = a + (b - a) * (i - 1) / n;
            x_hi = x;
        } else if (prev > 0.0 && cur <= 0.0) {
            throw NonPositiveSecondDerivative(
                "huxley_stationary: f' crosses + to - (f'' < 0 at crossing)");
        }
        prev = cur;
    }
    if (crossings == 0)
        throw NoInteriorStationaryPoint("huxley_stationary: f' has no sign change");
    if (crossings > 1)
        throw Error("huxley_stationary: multiple stationary points");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (x_lo + x_hi);
        if (f.deriv(mid, 1) < 0.0)
            x_lo = mid;
        else
            x_hi = mid;
        if (x_hi - x_lo < 1e-15 * (1.0 + std::abs(mid))) break;
    }
    double x0 = 0.5 * (x_lo + x_hi);
    double fpp = f.deriv(x0, 2);
    if (!(fpp > 0.0))
        throw NonPositiveSecondDerivative("huxley_stationary: f''(x0) <= 0");

    // assertion-2 hypothesis f'' >> Theta/Omega^2 on the grid
    double fpp_min = grid_min_abs([&](double x) { return f.deriv(x, 2); }, a, b);
    double hypo = f.theta_f / (f.omega_f * f.omega_f);
    if (fpp_min < 1e-3 * hypo)
        throw Error("huxley_stationary: f'' >> Theta_f/Omega_f^2 fails on grid");

    double kappa = std::min(b - x0, x0 - a);
    OscResult res;
    res.value = g.value(x0) * unit_phase(f(x0) + 0.125) / std::sqrt(fpp) +
                boundary_term(g, f, b) - boundary_term(g, f, a);
    double th32 = std::pow(f.theta_f, 1.5);
    res.err_est = std::pow(f.omega_f, 4) / (f.theta_f * f.theta_f * kappa * kappa * kappa) +
                  f.omega_f / th32 +
                  std::pow(f.omega_f, 3) / (th32 * f.omega_g * f.omega_g);
    res.node_count = 0;
    return res;
}

double bky_negligible(const SmoothWeight& g, const PhaseSpec& f, double a,
                      double b, int A) {
    (void)g;
    if (!(f.theta_f >= 1.0))
        throw Error("bky_negligible: requires Theta_f >= 1");
    double lam = f.lambda > 0.0
                     ? f.lambda
                     : grid_min_abs([&](double x) { return f.deriv(x, 1); }, a, b);
    if (!(lam > 0.0)) throw Error("bky_negligible: Lambda = min |f'| must be > 0");
    double t1 = std::pow(f.omega_f * lam / std::sqrt(f.theta_f), -A);
    double t2 = std::pow(lam * f.omega_g, -A);
    return (b - a) * (t1 + t2);
}

// ---- 2-D ----------------------------------------------------------------

Weight2D Weight2D::from_product(const ProductWeight2D& p) {
    Weight2D w;
    w.value = [p](double x, double y) { return Complex{p.value(x, y), 0.0}; };
    w.d2xy = [p](double x, double y) { return Complex{p.d2xy(x, y), 0.0}; };
    return w;
}

namespace {
constexpr int GL2_N = 15;
// same 15-point Gauss-Legendre rule as the 1-D engine
extern const double GL2_X[GL2_N];
extern const double GL2_W[GL2_N];
const double GL2_X[GL2_N] = {
    -0.98799251802048542848956571858661, -0.93727339240070590430775894771021,
    -0.84820658341042721620064832077422, -0.72441773136017004741618605461394,
    -0.57097217260853884753722673725391, -0.39415134707756336989720737098105,
    -0.20119409399743452230062830339460, 0.0,
    0.20119409399743452230062830339460,  0.39415134707756336989720737098105,
    0.57097217260853884753722673725391,  0.72441773136017004741618605461394,
    0.84820658341042721620064832077422,  0.93727339240070590430775894771021,
    0.98799251802048542848956571858661};
const double GL2_W[GL2_N] = {
    0.03075324199611726835462839357720, 0.07036604748810812470926741645066,
    0.10715922046717193501186954668587, 0.13957067792615431444780479451103,
    0.16626920581699393355320086048121, 0.18616100001556221102680056186642,
    0.19843148532711157645611832644384, 0.20257824192556127288062019996752,
    0.19843148532711157645611832644384, 0.18616100001556221102680056186642,
    0.16626920581699393355320086048121, 0.13957067792615431444780479451103,
    0.10715922046717193501186954668587, 0.07036604748810812470926741645066,
    0.03075324199611726835462839357720};

Complex tensor_gl(const Weight2D& g2, const Phase2D& f2, const Rect& rect,
                  int px, int py, long long& nodes) {
    double hx = (rect.bx - rect.ax) / px;
    double hy = (rect.by - rect.ay) / py;
    Complex total{0.0, 0.0};
    std::vector<double> xs(static_cast<std::size_t>(px) * GL2_N),
        wxs(static_cast<std::size_t>(px) * GL2_N);
    for (int p = 0; p < px; ++p) {
        double c = rect.ax + (p + 0.5) * hx, r = 0.5 * hx;
        for (int i = 0; i < GL2_N; ++i) {
            xs[static_cast<std::size_t>(p) * GL2_N + i] = c + r * GL2_X[i];
            wxs[static_cast<std::size_t>(p) * GL2_N + i] = r * GL2_W[i];
        }
    }
    for (int q = 0; q < py; ++q) {
        double cy = rect.ay + (q + 0.5) * hy, ry = 0.5 * hy;
        for (int j = 0; j < GL2_N; ++j) {
            double y = cy + ry * GL2_X[j];
            double wy = ry * GL2_W[j];
            Complex row{0.0, 0.0};
            for (std::size_t k = 0; k < xs.size(); ++k) {
                double x = xs[k];
                row += wxs[k] * g2.value(x, y) * unit_phase(f2.f(x, y));
            }
            total += wy * row;
        }
    }
    nodes += static_cast<long long>(px) * GL2_N * py * GL2_N;
    return total;
}

double cycles_along(const std::function<double(double)>& absderiv, double a,
                    double b, int n = 48) {
    double s = 0.0, h = (b - a) / n;
    double prev = absderiv(a);
    for (int i = 1; i <= n; ++i) {
        double cur = absderiv(a + i * h);
        s += 0.5 * (prev + cur) * h;
        prev = cur;
    }
    return s;
}
}  // namespace

OscResult quad_osc_2d(const Weight2D& g2, const Phase2D& f2, const Rect& rect,
                      double tol, long long budget) {
    OscResult res;
    double ymid = 0.5 * (rect.ay + rect.by);
    double xmid = 0.5 * (rect.ax + rect.bx);
    double cx = 0.0, cy = 0.0;
    for (double frac : {0.25, 0.5, 0.75}) {
        double yy = rect.ay + frac * (rect.by - rect.ay);
        double xx = rect.ax + frac * (rect.bx - rect.ax);
        cx = std::max(cx, cycles_along([&](double x) { return std::abs(f2.fx(x, yy)); },
                                       rect.ax, rect.bx));
        cy = std::max(cy, cycles_along([&](double y) { return std::abs(f2.fy(xx, y)); },
                                       rect.ay, rect.by));
    }
    (void)ymid;
    (void)xmid;
    int px = static_cast<int>(std::min(1.5 * cx + 4.0, 4096.0));
    int py = static_cast<int>(std::min(1.5 * cy + 4.0, 4096.0));
    Complex prev = tensor_gl(g2, f2, rect, px, py, res.node_count);
    for (;;) {
        px *= 2;
        py *= 2;
        long long next_cost = static_cast<long long>(px) * GL2_N * py * GL2_N;
        if (res.node_count + next_cost > budget)
            throw QuadratureNonConvergence("quad_osc_2d: node budget exhausted");
        Complex cur = tensor_gl(g2, f2, rect, px, py, res.node_count);
        double diff = std::abs(cur - prev);
        if (diff <= 0.5 * tol) {
            res.value = cur;
            res.err_est = diff;
            return res;
        }
        prev = cur;
    }
}

Bound2D second_deriv_bound_2d(const Weight2D& g2, const Phase2D& f2,
                              const Rect& rect) {
    Bound2D out;
    const int n = 48;
    double min_fxx = std::numeric_limits<double>::infinity();
    double min_fyy = min_fxx, min_det = min_fxx;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            double x = rect.ax + (rect.bx - rect.ax) * i / n;
            double y = rect.ay + (rect.by - rect.ay) * j / n;
            double fxx = TWO_PI * f2.fxx(x, y);
            double fyy = TWO_PI * f2.fyy(x, y);
            double fxy = TWO_PI * f2.fxy(x, y);
            min_fxx = std::min(min_fxx, fxx);
            min_fyy = std::min(min_fyy, fyy);
            min_det = std::min(min_det, fxx * fyy - fxy * fxy);
        }
    }
    if (!(min_fxx > 0.0) || !(min_fyy > 0.0)) {
        // magnitude-only fallback; the sign discrepancy is reported via the flag
        out.condition_f_ok = false;
        min_fxx = std::abs(min_fxx);
        min_fyy = std::abs(min_fyy);
        for (int i = 0; i <= n; ++i) {
            double x = rect.ax + (rect.bx - rect.ax) * i / n;
            for (int j = 0; j <= n; ++j) {
                double y = rect.ay + (rect.by - rect.ay) * j / n;
                min_fxx = std::min(min_fxx, std::abs(TWO_PI * f2.fxx(x, y)));
                min_fyy = std::min(min_fyy, std::abs(TWO_PI * f2.fyy(x, y)));
            }
        }
    }
    out.p1 = std::sqrt(std::max(min_fxx, 0.0));
    out.p2 = std::sqrt(std::max(min_fyy, 0.0));
    if (out.condition_f_ok && min_det < 0.25 * min_fxx * min_fyy)
        out.condition_f_ok = false;

    // var(g) by tensor Simpson of |d2xy|
    int m = 96;
    double hx = (rect.bx - rect.ax) / m, hy = (rect.by - rect.ay) / m;
    double var = 0.0;
    for (int i = 0; i <= m; ++i) {
        double wx = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        for (int j = 0; j <= m; ++j) {
            double wy = (j == 0 || j == m) ? 1.0 : (j % 2 ? 4.0 : 2.0);
            var += wx * wy *
                   std::abs(g2.d2xy(rect.ax + i * hx, rect.ay + j * hy));
        }
    }
    out.var_g = var * hx * hy / 9.0;
    out.bound = (out.p1 > 0.0 && out.p2 > 0.0)
                    ? out.var_g / (out.p1 * out.p2)
                    : std::numeric_limits<double>::infinity();
    return out;
}

// ---- Fourier-Mellin -------------------------------------------------------

Complex fourier_mellin_exact(const SmoothWeight& U, double r,
                             std::complex<double> s, double tol,
                             long long budget) {
    double lo = U.lo(), hi = U.hi();
    if (!(lo > 0.0))
        throw Error("fourier_mellin_exact: support must lie in (0, inf)");
    double sigma = s.real(), beta = s.imag();
    auto integrand = [&](double x) {
        double cycles = -r * x + beta / TWO_PI * std::log(x);
        return U.value(x) * std::pow(x, sigma - 1.0) * unit_phase(cycles);
    };
    double hint = std::abs(r) * (hi - lo) + std::abs(beta) / TWO_PI * std::log(hi / lo);
    return integrate_adaptive(integrand, lo, hi, tol, hint, budget).value;
}

Complex fourier_mellin_main(const SmoothWeight& U, double r,
                            std::complex<double> s) {
    double sigma = s.real(), beta = s.imag();
    if (r == 0.0 || beta == 0.0) return {0.0, 0.0};
    double xstar = beta / (TWO_PI * r);
    if (!U.in_support(xstar)) return {0.0, 0.0};
    double uval = U.value(xstar);
    double pref = std::sqrt(TWO_PI / std::abs(beta));
    Complex eighth = unit_phase(beta < 0.0 ? 0.125 : -0.125);
    // (beta/(2 pi e r))^{i beta} with positive real base xstar/e
    Complex osc = std::exp(Complex{0.0, beta * std::log(xstar / M_E)});
    return pref * eighth * osc * std::pow(xstar, sigma) * uval;
}

// ---- SpParams machinery ---------------------------------------------------

void SpParams::check() const {
    if (!(t > 0.0)) throw Error("SpParams: t must be > 0");
    if (!(t + tau > 0.0)) throw Error("SpParams: t + tau must be > 0");
    if (r == 0) throw Error("SpParams: r must be nonzero");
    if (q < 1) throw Error("SpParams: q must be >= 1");
    if (!(N > 0.0)) throw Error("SpParams: N must be > 0");
    if (!(C <= q && q < 2.0 * C))
        throw WindowViolation("SpParams: need C <= q < 2C");
    if (!(N / std::pow(t, 1.0 - eps) < Q))
        throw WindowViolation("SpParams: standing assumption N/t^{1-eps} < Q fails");
    if (!(Q < static_cast<double>(a) && static_cast<double>(a) <= q + Q))
        throw WindowViolation("SpParams: need Q < a <= q + Q");
    if (arith::gcd(a, q) != 1) throw Error("SpParams: gcd(a,q) must be 1");
}

double SpParams::x0() const {
    return static_cast<double>(r) * static_cast<double>(a) * tau / (tau + t);
}
double SpParams::tau0() const {
    return t / (static_cast<double>(r) * static_cast<double>(a) - 1.0);
}
double SpParams::kappa0() const {
    return std::pow(t, eps) * std::sqrt(Q * C / N);
}

PhaseSpec sp_phase(const SpParams& p) {
    double ra = static_cast<double>(p.r) * static_cast<double>(p.a);
    double t = p.t, tau = p.tau;
    PhaseSpec ph;
    ph.f = [=](double x) {
        return (t * std::log(std::abs(x - ra)) + tau * std::log(x)) / TWO_PI;
    };
    ph.df[0] = [=](double x) { return (t / (x - ra) + tau / x) / TWO_PI; };
    ph.df[1] = [=](double x) {
        return (-t / ((x - ra) * (x - ra)) - tau / (x * x)) / TWO_PI;
    };
    ph.df[2] = [=](double x) {
        return (2.0 * t / std::pow(x - ra, 3) + 2.0 * tau / std::pow(x, 3)) / TWO_PI;
    };
    ph.df[3] = [=](double x) {
        return (-6.0 * t / std::pow(x - ra, 4) - 6.0 * tau / std::pow(x, 4)) / TWO_PI;
    };
    ph.theta_f = std::abs(tau);
    ph.omega_f = std::abs(tau) * p.Q * p.C / p.N;
    ph.omega_g = 1.0;
    ph.kappa = ph.omega_f;
    return ph;
}

SmoothWeight sp_weight(const SpParams& p, const SmoothWeight& U,
                       const SmoothWeight& V) {
    double ra = static_cast<double>(p.r) * static_cast<double>(p.a);
    double aq = static_cast<double>(p.a) * static_cast<double>(p.q);
    double t = p.t, tau = p.tau, N = p.N;
    SmoothWeight U0 = U.power_scaled(1.0);
    SmoothWeight V0 = V.power_scaled(0.5);
    auto uarg = [=](double x) { return t * aq / (TWO_PI * N * (x - ra)); };
    auto varg = [=](double x) { return -tau * aq / (TWO_PI * N * x); };
    auto val = [=](double x) {
        if (x <= 0.0 || x <= ra) return 0.0;
        return U0.value(uarg(x)) * V0.value(varg(x));
    };
    auto jet = [=](double x) {
        if (x <= 0.0 || x <= ra) return Jet{};
        Jet xj = Jet::variable(x);
        Jet ua = (t * aq / TWO_PI) / (N * (xj - ra));
        Jet va = (-tau * aq / TWO_PI) / (N * xj);
        // compose the weight jets with the rational arguments
        auto compose_weight = [](const SmoothWeight& w, const Jet& arg) {
            Jet inner = w.jet(arg.value());
            std::array<double, JET_ORDER + 1> coef{};
            for (int k = 0; k <= JET_ORDER; ++k) coef[k] = inner.c[k];
            return compose(coef, arg);
        };
        return compose_weight(U0, ua) * compose_weight(V0, va);
    };
    // support in x: intersection of the two argument windows with (0, 1]
    double xlo = 0.0, xhi = 1.0;
    if (tau < 0.0) {
        double v_lo = -tau * aq / (TWO_PI * N * V.hi());  // varg decreasing in x
        double v_hi = -tau * aq / (TWO_PI * N * V.lo());
        xlo = std::max(xlo, v_lo);
        xhi = std::min(xhi, v_hi);
    }
    double u_lo = ra + t * aq / (TWO_PI * N * U.hi());
    double u_hi = ra + t * aq / (TWO_PI * N * U.lo());
    xlo = std::max(xlo, u_lo);
    xhi = std::min(xhi, u_hi);
    if (!(xhi > xlo)) xlo = xhi = 0.0;
    return SmoothWeight::from_functions(val, jet, xlo, xhi,
                                        DerivativeProfile::Flat, "sp_weight");
}

const Complex I1_C2 = []() {
    // -(2 pi)^{3/2} e(1/8): calibrated against the I** oracle (see the
    // calibration test); stored in closed form
    double mag = std::pow(TWO_PI, 1.5);
    return Complex{-mag * std::sqrt(0.5), -mag * std::sqrt(0.5)};
}();

Complex i1_main(const SpParams& p, const SmoothWeight& V) {
    p.check();
    double w = -static_cast<double>(p.q) * (p.t + p.tau) /
               (TWO_PI * p.N * static_cast<double>(p.r));
    if (!V.in_support(w)) return {0.0, 0.0};
    double v0 = std::pow(w, 1.5) * V.value(w);
    double ra = static_cast<double>(p.r) * static_cast<double>(p.a);
    double amp = ra / std::pow(p.t + p.tau, 1.5);
    Complex osc = std::exp(Complex{0.0, -(p.t + p.tau) * std::log(w / M_E)});
    return I1_C2 * amp * osc * v0;
}

double b_error_bound(const SpParams& p) {
    p.check();
    double t = p.t, tau = p.tau, N = p.N;
    double aq = static_cast<double>(p.a) * static_cast<double>(p.q);
    double te = std::pow(t, p.eps);
    double at = std::abs(tau);
    double sqt = std::sqrt(t);

    double term1 = (p.Q * p.C / (N * sqt)) * std::pow(te / (1.0 + at), 10.0);
    double term2 = std::pow(t, -1.5 + p.eps);
    double term3 = 0.0, term4 = 0.0;
    if (at > 1.0) {
        double estar = 1.0 / (sqt * std::pow(at, 1.5)) * std::min(1.0, at * aq / N);
        term3 = estar + p.Q * p.C / (sqt * at * N);
    }
    double win_lo = TWO_PI * N / aq, win_hi = 2.0 * TWO_PI * N / aq;
    if (at >= win_lo && at <= win_hi) {
        double dist = std::abs(tau - p.tau0());
        double m = std::min(dist > 0.0 ? 1.0 / dist : p.kappa0(), p.kappa0());
        term4 = m / (sqt * std::sqrt(at));
    }
    return term1 + term2 + term3 + term4;
}

OscResult istarstar(const SpParams& p, const SmoothWeight& U,
                    const SmoothWeight& V, double tol, long long budget) {
    p.check();
    double ra = static_cast<double>(p.r) * static_cast<double>(p.a);
    double aq = static_cast<double>(p.a) * static_cast<double>(p.q);
    double N = p.N, t = p.t, tau = p.tau;
    Complex sV{0.5, -tau}, sU{1.0, -t};

    // |U^dag| <= int U(x) x^{sigma-1} dx; crude constant for pruning
    double u_l1 = 0.0;
    {
        int m = 256;
        double h = (U.hi() - U.lo()) / m;
        for (int i = 0; i <= m; ++i) {
            double x = U.lo() + i * h;
            u_l1 += U.value(x) * h;
        }
    }
    double inner_tol = std::max(1e-13, tol / 50.0);
    double prune = tol / 10.0;  // pointwise; window length is <= 1
    long long inner_nodes = 0;
    double inner_err = 0.0;

    auto integrand = [&](double x) -> Complex {
        if (x <= 0.0) return {0.0, 0.0};
        double rhoV = N * x / aq;
        Complex vd = fourier_mellin_exact(V, rhoV, sV, inner_tol, budget);
        inner_err += inner_tol;
        if (std::abs(vd) * u_l1 < prune) return {0.0, 0.0};
        double rhoU = N * (ra - x) / aq;
        Complex ud = fourier_mellin_exact(U, rhoU, sU, inner_tol, budget);
        inner_err += inner_tol;
        return vd * ud;
    };

    // effective V-stationary window: -tau a q/(2 pi N x) in ~[1/4, 8]
    double xa = 0.0, xb = 0.0;
    if (tau < 0.0) {
        xa = -tau * aq / (TWO_PI * N * 8.0);
        xb = -tau * aq / (TWO_PI * N * 0.25);
    }
    xa = std::clamp(xa, 0.0, 1.0);
    xb = std::clamp(xb, 0.0, 1.0);

    OscResult total;
    auto add_piece = [&](double lo, double hi, double hint) {
        if (!(hi > lo)) return;
        OscResult r = integrate_nested(integrand, lo, hi, tol * (hi - lo), hint,
                                       budget - total.node_count);
        total.value += r.value;
        total.err_est += r.err_est;
        total.node_count += r.node_count;
    };
    if (xb > xa) {
        // cycles of the product phase on the active window
        double mid = 0.5 * (xa + xb);
        double freq = std::abs(t / (TWO_PI * (mid - ra)) + tau / (TWO_PI * mid));
        double hint_mid = (freq + 4.0 * N / aq) * (xb - xa) + 8.0;
        add_piece(0.0, xa, 0.1 * (t + std::abs(tau)) * xa + 16.0);
        add_piece(xa, xb, hint_mid);
        add_piece(xb, 1.0, 0.1 * (t + std::abs(tau)) * (1.0 - xb) + 16.0);
    } else {
        add_piece(0.0, 1.0, 0.1 * (t + std::abs(tau)) + 16.0);
    }
    total.err_est += prune + inner_err * 2.0;
    total.node_count += inner_nodes;
    return total;
}

}  // namespace osc
}  // namespace gl3osc
