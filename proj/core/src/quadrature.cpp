#include "gl3osc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace gl3osc {

Complex unit_phase(double cycles) {
    double th = 6.283185307179586476925286766559 * cycles;
    return {std::cos(th), std::sin(th)};
}

namespace {

// 15-point Gauss-Legendre on [-1,1]
constexpr int GL_N = 15;
constexpr double GL_X[GL_N] = {
    -0.98799251802048542848956571858661, -0.93727339240070590430775894771021,
    -0.84820658341042721620064832077422, -0.72441773136017004741618605461394,
    -0.57097217260853884753722673725391, -0.39415134707756336989720737098105,
    -0.20119409399743452230062830339460, 0.0,
    0.20119409399743452230062830339460,  0.39415134707756336989720737098105,
    0.57097217260853884753722673725391,  0.72441773136017004741618605461394,
    0.84820658341042721620064832077422,  0.93727339240070590430775894771021,
    0.98799251802048542848956571858661};
constexpr double GL_W[GL_N] = {
    0.03075324199611726835462839357720, 0.07036604748810812470926741645066,
    0.10715922046717193501186954668587, 0.13957067792615431444780479451103,
    0.16626920581699393355320086048121, 0.18616100001556221102680056186642,
    0.19843148532711157645611832644384, 0.20257824192556127288062019996752,
    0.19843148532711157645611832644384, 0.18616100001556221102680056186642,
    0.16626920581699393355320086048121, 0.13957067792615431444780479451103,
    0.10715922046717193501186954668587, 0.07036604748810812470926741645066,
    0.03075324199611726835462839357720};

Complex gl_panels(const Integrand& f, double a, double b, int panels,
                  long long& nodes) {
    Complex total{0.0, 0.0};
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double c = a + (p + 0.5) * h, r = 0.5 * h;
        Complex s{0.0, 0.0};
        for (int i = 0; i < GL_N; ++i) s += GL_W[i] * f(c + r * GL_X[i]);
        total += s * r;
    }
    nodes += static_cast<long long>(panels) * GL_N;
    return total;
}

int seed_panels(double a, double b, double cycle_hint) {
    double cycles = std::max(0.0, cycle_hint);
    double p = 2.0 * cycles + 8.0;
    (void)a;
    (void)b;
    return static_cast<int>(std::min(p, 1.0e7));
}

// ---- nested Clenshaw-Curtis -------------------------------------------
//
// One panel holds function values at x_k = mid + half*cos(k pi / n),
// k = 0..n.  Doubling n keeps every existing node.  The integral at order
// n comes from the cosine-coefficient formula; the order-n/2 value is
// computable from the even-indexed subset, giving a free error estimate.

struct CCPanel {
    double mid, half;
    int n = 0;                    // current order (power of 2)
    std::vector<Complex> fv;      // n+1 values, fv[k] at angle k pi / n
    Complex integral{0.0, 0.0};
    double err = 0.0;
};

Complex cc_integral_from_values(const std::vector<Complex>& fv, int n,
                                int stride, double half) {
    // Chebyshev coefficients a_m via slow cosine transform (n <= ~512 here)
    // f ~ a_0/2 + sum_{1}^{n-1} a_m T_m + a_n/2 T_n
    Complex result{0.0, 0.0};
    for (int m = 0; m <= n; m += 2) {
        Complex am{0.0, 0.0};
        for (int k = 0; k <= n; ++k) {
            double w = (k == 0 || k == n) ? 0.5 : 1.0;
            am += w * fv[static_cast<std::size_t>(k) * stride] *
                  std::cos(M_PI * m * k / n);
        }
        am *= 2.0 / n;
        double tm_int = 2.0 / (1.0 - static_cast<double>(m) * m);  // m even
        if (m == 0) tm_int = 2.0;
        double scale = (m == 0 || m == n) ? 0.5 : 1.0;
        result += scale * am * tm_int;
    }
    return result * half;
}

void cc_refine(CCPanel& p, const Integrand& f, long long& nodes) {
    if (p.n == 0) {
        p.n = 8;
        p.fv.resize(p.n + 1);
        for (int k = 0; k <= p.n; ++k) {
            double x = p.mid + p.half * std::cos(M_PI * k / p.n);
            p.fv[k] = f(x);
        }
        nodes += p.n + 1;
    } else {
        int n2 = p.n * 2;
        std::vector<Complex> nv(n2 + 1);
        for (int k = 0; k <= p.n; ++k) nv[2 * k] = p.fv[k];
        for (int k = 1; k <= n2; k += 2) {
            double x = p.mid + p.half * std::cos(M_PI * k / n2);
            nv[k] = f(x);
        }
        nodes += p.n;  // only the odd nodes are new
        p.fv = std::move(nv);
        p.n = n2;
    }
    Complex coarse = cc_integral_from_values(p.fv, p.n / 2, 2, p.half);
    p.integral = cc_integral_from_values(p.fv, p.n, 1, p.half);
    p.err = std::abs(p.integral - coarse);
}

}  // namespace

OscResult integrate_adaptive(const Integrand& f, double a, double b,
                             double tol, double cycle_hint,
                             long long node_budget) {
    OscResult res;
    if (!(b > a)) return res;
    int panels = seed_panels(a, b, cycle_hint);
    if (static_cast<long long>(panels) * GL_N > node_budget)
        throw QuadratureNonConvergence("integrate_adaptive: seed panel count " +
                                       std::to_string(panels) +
                                       " already exceeds node budget");
    Complex prev = gl_panels(f, a, b, panels, res.node_count);
    for (;;) {
        panels *= 2;
        if (res.node_count + static_cast<long long>(panels) * GL_N > node_budget)
            throw QuadratureNonConvergence(
                "integrate_adaptive: node budget exhausted at " +
                std::to_string(panels) + " panels, err " +
                std::to_string(std::abs(prev)) + " vs tol " + std::to_string(tol));
        Complex cur = gl_panels(f, a, b, panels, res.node_count);
        double diff = std::abs(cur - prev);
        if (diff <= 0.5 * tol) {
            res.value = cur;
            res.err_est = diff;
            return res;
        }
        prev = cur;
    }
}

OscResult integrate_nested(const Integrand& f, double a, double b, double tol,
                           double cycle_hint, long long node_budget) {
    OscResult res;
    if (!(b > a)) return res;
    // one panel per ~1.5 cycles, at least 4
    int npan = std::max(4, static_cast<int>(std::min(1.0e6, cycle_hint / 1.5 + 4.0)));
    std::vector<CCPanel> panels(npan);
    double h = (b - a) / npan;
    for (int i = 0; i < npan; ++i) {
        panels[i].mid = a + (i + 0.5) * h;
        panels[i].half = 0.5 * h;
    }
    for (auto& p : panels) cc_refine(p, f, res.node_count);

    for (;;) {
        double total_err = 0.0;
        for (auto& p : panels) total_err += p.err;
        if (total_err <= 0.5 * tol) break;
        double cut = std::max(0.5 * tol / panels.size(), 0.25 * total_err / panels.size());
        bool any = false;
        for (auto& p : panels) {
            if (p.err > cut) {
                if (res.node_count + p.n > node_budget)
                    throw QuadratureNonConvergence(
                        "integrate_nested: node budget exhausted, err " +
                        std::to_string(total_err) + " vs tol " + std::to_string(tol));
                cc_refine(p, f, res.node_count);
                any = true;
            }
        }
        if (!any) break;  // numerical floor; errors no longer shrink
    }
    double total_err = 0.0;
    Complex total{0.0, 0.0};
    for (auto& p : panels) {
        total += p.integral;
        total_err += p.err;
    }
    res.value = total;
    res.err_est = total_err;
    return res;
}

}  // namespace gl3osc
