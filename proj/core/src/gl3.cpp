#include "gl3osc/gl3.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gl3osc/arith.hpp"
#include "gl3osc/errors.hpp"
#include "gl3osc/gammafn.hpp"

namespace gl3osc {
namespace gl3 {

namespace {
constexpr double TWO_PI = 6.283185307179586476925286766559;
constexpr double PI = 3.14159265358979323846264338327950288;
using Cx = Complex;

double max_neg_re_alpha(const GL3Params& p) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& a : p.alpha) m = std::max(m, -a.real());
    return m;
}
}  // namespace

GL3Params langlands(double nu1, double nu2) {
    GL3Params p;
    p.nu1 = nu1;
    p.nu2 = nu2;
    p.alpha = {Cx{-nu1 - 2.0 * nu2 + 1.0, 0.0}, Cx{-nu1 + nu2, 0.0},
               Cx{2.0 * nu1 + nu2 - 1.0, 0.0}};
    return p;
}

GL3Params GL3Params::dual() const {
    GL3Params d;
    d.nu1 = nu2;
    d.nu2 = nu1;
    d.alpha = {-alpha[2], -alpha[1], -alpha[0]};
    return d;
}

Complex gamma_ell(Complex s, int ell, const GL3Params& p) {
    if (ell != 0 && ell != 1) throw Error("gamma_ell: ell must be 0 or 1");
    Cx lg = Cx{-3.0, 0.0} * s * std::log(PI) - 1.5 * std::log(PI) - std::log(2.0);
    for (const auto& a : p.alpha) {
        Cx num = (1.0 + s + a + static_cast<double>(ell)) / 2.0;
        Cx den = (-s - a + static_cast<double>(ell)) / 2.0;
        if (gamma_pole_distance(num) < 1e-9)
            throw PoleEncountered("gamma_ell: numerator Gamma pole at s");
        if (gamma_pole_distance(den) < 1e-9) return {0.0, 0.0};
        lg += lgamma_complex(num) - lgamma_complex(den);
    }
    return std::exp(lg);
}

Complex gamma_pm(Complex s, int sign, const GL3Params& p) {
    Cx g0 = gamma_ell(s, 0, p);
    Cx g1 = gamma_ell(s, 1, p);
    Cx ig1 = Cx{0.0, 1.0} * g1;
    return sign > 0 ? g0 - ig1 : g0 + ig1;
}

Complex stirling_phi(double tau, int sign, const GL3Params& p) {
    if (std::abs(tau) < 2.0) throw Error("stirling_phi: requires |tau| >= 2");
    Cx g = gamma_pm(Cx{-0.5, tau}, sign, p);
    // (|tau|/(e pi))^{-3 i tau}
    Cx osc = std::exp(Cx{0.0, -3.0 * tau * std::log(std::abs(tau) / (M_E * PI))});
    return g * osc;
}

// ---- coefficient tables ----------------------------------------------------

bool CoefficientTable::has(int64_t n1, int64_t n2) const {
    return entries.count({n1, n2}) != 0;
}

Complex CoefficientTable::lambda(int64_t n1, int64_t n2) const {
    auto it = entries.find({n1, n2});
    return it == entries.end() ? Cx{0.0, 0.0} : it->second;
}

CoefficientTable load_coefficients(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("load_coefficients: cannot open " + path);
    CoefficientTable t;
    t.source = path;
    t.cuspidal = true;
    double nu1 = 0.0, nu2 = 0.0;
    bool saw_nu1 = false, saw_nu2 = false, saw_sd = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ss(line);
        if (line[0] == '#') {
            std::string key;
            ss >> key;
            if (key == "#nu1") {
                if (!(ss >> nu1)) throw FormatError("bad #nu1 line " + std::to_string(lineno));
                saw_nu1 = true;
            } else if (key == "#nu2") {
                if (!(ss >> nu2)) throw FormatError("bad #nu2 line " + std::to_string(lineno));
                saw_nu2 = true;
            } else if (key == "#selfdual") {
                int v = 0;
                if (!(ss >> v) || (v != 0 && v != 1))
                    throw FormatError("bad #selfdual line " + std::to_string(lineno));
                t.selfdual = v == 1;
                saw_sd = true;
            } else if (key == "#cuspidal") {
                int v = 0;
                if (!(ss >> v) || (v != 0 && v != 1))
                    throw FormatError("bad #cuspidal line " + std::to_string(lineno));
                t.cuspidal = v == 1;
            } else {
                throw FormatError("unknown header '" + key + "' at line " +
                                  std::to_string(lineno));
            }
            continue;
        }
        int64_t n1 = 0, n2 = 0;
        double re = 0.0, im = 0.0;
        if (!(ss >> n1 >> n2 >> re >> im))
            throw FormatError("bad data line " + std::to_string(lineno));
        if (n1 < 1 || n2 < 1)
            throw FormatError("indices must be >= 1 at line " + std::to_string(lineno));
        auto [it, fresh] = t.entries.insert({{n1, n2}, Cx{re, im}});
        (void)it;
        if (!fresh)
            throw FormatError("duplicate (n1,n2) at line " + std::to_string(lineno));
        t.max_norm = std::max(t.max_norm, n1 * n1 * n2);
    }
    if (!saw_nu1 || !saw_nu2 || !saw_sd)
        throw FormatError("missing #nu1/#nu2/#selfdual header in " + path);
    t.params = langlands(nu1, nu2);
    if (!t.has(1, 1) || std::abs(t.lambda(1, 1) - Cx{1.0, 0.0}) > 1e-15)
        throw NormalizationError("load_coefficients: lambda(1,1) must equal 1");
    return t;
}

void write_coefficients(const CoefficientTable& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw FormatError("write_coefficients: cannot open " + path);
    char buf[128];
    std::snprintf(buf, sizeof buf, "#nu1 %.17g\n#nu2 %.17g\n#selfdual %d\n",
                  t.params.nu1, t.params.nu2, t.selfdual ? 1 : 0);
    out << buf;
    if (!t.cuspidal) out << "#cuspidal 0\n";
    for (const auto& [key, v] : t.entries) {
        std::snprintf(buf, sizeof buf, "%lld %lld %.17g %.17g\n",
                      static_cast<long long>(key.first),
                      static_cast<long long>(key.second), v.real(), v.imag());
        out << buf;
    }
}

CoefficientTable d3_table(int64_t n_max) {
    if (n_max < 1) throw Error("d3_table: n_max must be >= 1");
    CoefficientTable t;
    t.params = langlands(1.0 / 3.0, 1.0 / 3.0);  // alpha = (0,0,0)
    t.selfdual = true;
    t.cuspidal = false;
    t.source = "d3";
    for (int64_t n = 1; n <= n_max; ++n) {
        double v = static_cast<double>(arith::divisor3(n));
        t.entries[{1, n}] = Cx{v, 0.0};
        if (n > 1) t.entries[{n, 1}] = Cx{v, 0.0};
        t.max_norm = std::max(t.max_norm, n * n);
    }
    t.max_norm = std::max(t.max_norm, n_max);
    return t;
}

double ramanujan_avg(const CoefficientTable& t, double x) {
    if (!(x >= 1.0)) throw Error("ramanujan_avg: x must be >= 1");
    if (x > static_cast<double>(t.max_norm))
        throw InsufficientData("ramanujan_avg: x exceeds table max_norm");
    double sum = 0.0;
    for (const auto& [key, v] : t.entries) {
        double norm = static_cast<double>(key.first) * static_cast<double>(key.first) *
                      static_cast<double>(key.second);
        if (norm <= x) sum += std::norm(v);
    }
    return sum / x;
}

// ---- H_pm -------------------------------------------------------------------

namespace {

// shared contour grid: nodes tau_j, weights w_j, and W(tau) = gamma_pm * htilde
struct ContourGrid {
    std::vector<double> tau, w;
    std::vector<Cx> W;
};

constexpr int CGL_N = 15;
extern const double CGL_X[CGL_N];
extern const double CGL_W[CGL_N];
const double CGL_X[CGL_N] = {
    -0.98799251802048542848956571858661, -0.93727339240070590430775894771021,
    -0.84820658341042721620064832077422, -0.72441773136017004741618605461394,
    -0.57097217260853884753722673725391, -0.39415134707756336989720737098105,
    -0.20119409399743452230062830339460, 0.0,
    0.20119409399743452230062830339460,  0.39415134707756336989720737098105,
    0.57097217260853884753722673725391,  0.72441773136017004741618605461394,
    0.84820658341042721620064832077422,  0.93727339240070590430775894771021,
    0.98799251802048542848956571858661};
const double CGL_W[CGL_N] = {
    0.03075324199611726835462839357720, 0.07036604748810812470926741645066,
    0.10715922046717193501186954668587, 0.13957067792615431444780479451103,
    0.16626920581699393355320086048121, 0.18616100001556221102680056186642,
    0.19843148532711157645611832644384, 0.20257824192556127288062019996752,
    0.19843148532711157645611832644384, 0.18616100001556221102680056186642,
    0.16626920581699393355320086048121, 0.13957067792615431444780479451103,
    0.10715922046717193501186954668587, 0.07036604748810812470926741645066,
    0.03075324199611726835462839357720};

ContourGrid make_grid(const SmoothWeight& h, int sign, const GL3Params& p,
                      const HOptions& opt, double max_abs_log_y, int panels) {
    ContourGrid g;
    g.tau.reserve(static_cast<std::size_t>(panels) * CGL_N);
    g.w.reserve(g.tau.capacity());
    double a = -opt.tau_max, b = opt.tau_max;
    double hstep = (b - a) / panels;
    for (int pi = 0; pi < panels; ++pi) {
        double c = a + (pi + 0.5) * hstep, r = 0.5 * hstep;
        for (int i = 0; i < CGL_N; ++i) {
            g.tau.push_back(c + r * CGL_X[i]);
            g.w.push_back(r * CGL_W[i]);
        }
    }
    (void)max_abs_log_y;
    g.W.resize(g.tau.size());
    double log_ratio = std::log(h.hi() / h.lo());
    for (std::size_t i = 0; i < g.tau.size(); ++i) {
        double tv = g.tau[i];
        Cx s{opt.contour_sigma, tv};
        // htilde(-s) = int h(x) x^{-s-1} dx
        auto integrand = [&](double x) {
            return h.value(x) *
                   std::pow(x, -opt.contour_sigma - 1.0) *
                   unit_phase(-tv / TWO_PI * std::log(x));
        };
        double hint = std::abs(tv) * log_ratio / TWO_PI;
        Cx htil = integrate_adaptive(integrand, h.lo(), h.hi(), opt.tol, hint).value;
        g.W[i] = gamma_pm(s, sign, p) * htil;
    }
    return g;
}

Cx grid_eval(const ContourGrid& g, double y, double sigma) {
    Cx sum{0.0, 0.0};
    double ly = std::log(y);
    for (std::size_t i = 0; i < g.tau.size(); ++i) {
        // y^{-sigma - i tau}
        Cx ypow = std::exp(Cx{0.0, -g.tau[i] * ly});
        sum += g.w[i] * g.W[i] * ypow;
    }
    return sum * std::pow(y, -sigma) / TWO_PI;
}

double grid_tail_estimate(const ContourGrid& g, double y, double sigma) {
    // magnitude of W near the truncation edge, decay rate fitted on the
    // outer 10% of the grid
    std::size_t n = g.tau.size();
    std::size_t i90 = static_cast<std::size_t>(0.9 * n);
    double m_end = 0.0, m_90 = 0.0;
    for (std::size_t i = n - n / 50 - 1; i < n; ++i) m_end = std::max(m_end, std::abs(g.W[i]));
    for (std::size_t i = i90; i < i90 + n / 50 + 1 && i < n; ++i)
        m_90 = std::max(m_90, std::abs(g.W[i]));
    double span = g.tau.back() - g.tau[i90];
    double tail;
    if (m_90 > m_end && m_end > 0.0 && span > 0.0) {
        double rate = std::log(m_90 / m_end) / span;
        tail = m_end / rate;
    } else {
        tail = (m_end + m_90) * std::max(span, 1.0);
    }
    return 2.0 * tail * std::pow(y, -sigma) / TWO_PI;
}

void check_contour(const GL3Params& p, double sigma) {
    if (!(sigma > -1.0 + max_neg_re_alpha(p)))
        throw ContourOutOfRange("h_pm: contour sigma must satisfy sigma > -1 + max(-Re alpha)");
}

}  // namespace

std::vector<HValue> h_pm_batch(const std::vector<double>& ys,
                               const SmoothWeight& h, int sign,
                               const GL3Params& p, const HOptions& opt) {
    check_contour(p, opt.contour_sigma);
    double max_log = 1.0;
    for (double y : ys) {
        if (!(y > 0.0)) throw Error("h_pm: y must be > 0");
        max_log = std::max(max_log, std::abs(std::log(y)));
    }
    // cycles along the contour: y-power + gamma oscillation (~3 log tau / 2pi)
    double cyc = opt.tau_max *
                 (max_log / TWO_PI + 3.0 * std::log(2.0 + opt.tau_max) / TWO_PI + 0.3);
    int panels = static_cast<int>(std::min(1.5 * cyc + 8.0, 60000.0));
    ContourGrid coarse = make_grid(h, sign, p, opt, max_log, panels);
    ContourGrid fine = make_grid(h, sign, p, opt, max_log, panels * 2);
    std::vector<HValue> out;
    out.reserve(ys.size());
    for (double y : ys) {
        Cx v1 = grid_eval(coarse, y, opt.contour_sigma);
        Cx v2 = grid_eval(fine, y, opt.contour_sigma);
        HValue hv;
        hv.value = v2;
        hv.err_est = std::abs(v2 - v1) + grid_tail_estimate(fine, y, opt.contour_sigma) +
                     opt.tol * opt.tau_max;
        out.push_back(hv);
    }
    return out;
}

HValue h_pm(double y, const SmoothWeight& h, int sign, const GL3Params& p,
            const HOptions& opt) {
    return h_pm_batch({y}, h, sign, p, opt)[0];
}

// ---- Voronoi ---------------------------------------------------------------

namespace detail {

VoronoiResult voronoi_sides(const CoefficientTable& t, int64_t a, int64_t q,
                            const SmoothWeight& h, const HOptions& opt) {
    if (q < 1) throw Error("voronoi: q must be >= 1");
    if (arith::gcd(a, q) != 1) throw Error("voronoi: gcd(a,q) must be 1");
    VoronoiResult res;

    // lhs
    int64_t n_lo = std::max<int64_t>(1, static_cast<int64_t>(std::floor(h.lo())));
    int64_t n_hi = static_cast<int64_t>(std::ceil(h.hi()));
    for (int64_t n = n_lo; n <= n_hi; ++n) {
        double w = h.value(static_cast<double>(n));
        if (w == 0.0) continue;
        if (!t.has(1, n))
            throw InsufficientData("voronoi: table lacks lambda(1," + std::to_string(n) + ")");
        int64_t rn = (a % q) * (n % q) % q;
        double th = TWO_PI * static_cast<double>(rn) / static_cast<double>(q);
        res.lhs += t.lambda(1, n) * Cx{std::cos(th), std::sin(th)} * w;
    }

    // rhs: q sum_pm sum_{n1|q} sum_{n2} lambda(n2,n1)/(n1 n2) S(abar,pm n2;q/n1)
    //      H_pm(n1^2 n2/q^3)
    int64_t abar = arith::modinv(a, q);
    double q3 = std::pow(static_cast<double>(q), 3.0);
    double budget = 0.0;

    for (int sign : {+1, -1}) {
        for (int64_t n1 = 1; n1 <= q; ++n1) {
            if (q % n1 != 0) continue;
            int64_t c = q / n1;
            // adaptive n2 blocks; H values batched on a shared grid
            const int64_t BLOCK = 48;
            int64_t n2_start = 1;
            double largest_term = 0.0;
            int quiet_blocks = 0;
            double last_block_sum = 0.0;
            while (true) {
                std::vector<double> ys;
                ys.reserve(static_cast<std::size_t>(BLOCK));
                for (int64_t n2 = n2_start; n2 < n2_start + BLOCK; ++n2)
                    ys.push_back(static_cast<double>(n1) * static_cast<double>(n1) *
                                 static_cast<double>(n2) / q3);
                auto hv = h_pm_batch(ys, h, sign, t.params, opt);
                double block_max = 0.0, block_sum = 0.0;
                for (int64_t n2 = n2_start; n2 < n2_start + BLOCK; ++n2) {
                    std::size_t k = static_cast<std::size_t>(n2 - n2_start);
                    if (!t.has(n2, n1)) {
                        if (std::abs(hv[k].value) + hv[k].err_est >
                            opt.tol * 10.0)
                            throw InsufficientData(
                                "voronoi: table too shallow at (n2,n1)=(" +
                                std::to_string(n2) + "," + std::to_string(n1) + ")");
                        continue;
                    }
                    Cx lam = t.lambda(n2, n1);
                    Cx S = arith::kloosterman(abar, sign > 0 ? n2 : -n2, c);
                    Cx term = lam / (static_cast<double>(n1) * static_cast<double>(n2)) *
                              S * hv[k].value;
                    res.rhs += static_cast<double>(q) * term;
                    budget += static_cast<double>(q) * std::abs(lam) /
                              (static_cast<double>(n1) * static_cast<double>(n2)) *
                              std::abs(S) * hv[k].err_est;
                    double mag = std::abs(term) * static_cast<double>(q);
                    block_max = std::max(block_max, mag);
                    block_sum += mag;
                    largest_term = std::max(largest_term, mag);
                    ++res.dual_terms;
                }
                if (block_max < std::max(1e-14, 1e-9 * largest_term)) {
                    ++quiet_blocks;
                    if (quiet_blocks >= 2) {
                        budget += 2.0 * (block_sum + last_block_sum);  // tail allowance
                        break;
                    }
                } else {
                    quiet_blocks = 0;
                }
                last_block_sum = block_sum;
                n2_start += BLOCK;
                if (n2_start > 1 << 16)
                    throw InsufficientData("voronoi: dual sum fails to decay");
            }
        }
    }
    res.budget = budget + 1e-12 * std::abs(res.lhs);
    res.residual = std::abs(res.lhs - res.rhs);
    return res;
}

}  // namespace detail

VoronoiResult voronoi_check(const CoefficientTable& t, int64_t a, int64_t q,
                            const SmoothWeight& h, const HOptions& opt) {
    if (!t.cuspidal)
        throw Error("voronoi_check: table is not cuspidal-flagged; the dual "
                    "identity would need polar corrections");
    return detail::voronoi_sides(t, a, q, h, opt);
}

// ---- AFE --------------------------------------------------------------------

namespace {
// completed-L archimedean factor  log prod_i Gamma_R(w - alpha_i)
Cx log_gamma_factor(Cx w, const GL3Params& p) {
    Cx lg{0.0, 0.0};
    for (const auto& al : p.alpha) {
        Cx z = (w - al) / 2.0;
        if (gamma_pole_distance(z) < 1e-9)
            throw PoleEncountered("afe: Gamma_R pole on the evaluation point");
        lg += -((w - al) / 2.0) * std::log(PI) + lgamma_complex(z);
    }
    return lg;
}

struct VsGrid {
    std::vector<double> v, w;   // nodes and weights on the vertical line
    std::vector<Cx> Wv;         // G(u) (gamma(s+u)/gamma(s)) / u at u = sigma+iv
    double sigma = 3.0;
};

VsGrid make_vs_grid(Cx s, const GL3Params& p,
                    const std::function<Cx(Cx)>& G, double sigma, int panels,
                    double vmax) {
    VsGrid g;
    g.sigma = sigma;
    Cx lgam_s = log_gamma_factor(s, p);
    double a = -vmax, b = vmax;
    double hstep = (b - a) / panels;
    for (int pi = 0; pi < panels; ++pi) {
        double c = a + (pi + 0.5) * hstep, r = 0.5 * hstep;
        for (int i = 0; i < CGL_N; ++i) {
            double v = c + r * CGL_X[i];
            g.v.push_back(v);
            g.w.push_back(r * CGL_W[i]);
        }
    }
    g.Wv.resize(g.v.size());
    for (std::size_t i = 0; i < g.v.size(); ++i) {
        Cx u{sigma, g.v[i]};
        Cx ratio = std::exp(log_gamma_factor(s + u, p) - lgam_s);
        g.Wv[i] = G(u) * ratio / u;
    }
    return g;
}

Cx vs_eval(const VsGrid& g, double y) {
    Cx sum{0.0, 0.0};
    double ly = std::log(y);
    for (std::size_t i = 0; i < g.v.size(); ++i)
        sum += g.w[i] * g.Wv[i] * std::exp(Cx{0.0, -g.v[i] * ly});
    return sum * std::pow(y, -g.sigma) / TWO_PI;
}
}  // namespace

std::function<Complex(Complex)> afe_gaussian_g() {
    return [](Cx u) { return std::exp(u * u); };
}

std::function<Complex(Complex)> afe_polekill_g(Complex s) {
    Cx one_minus_s = 1.0 - s;
    Cx p1 = one_minus_s * one_minus_s;
    Cx p2 = s * s;
    return [p1, p2](Cx u) {
        Cx u2 = u * u;
        Cx k1 = (u2 - p1) / (-p1);
        Cx k2 = (u2 - p2) / (-p2);
        return std::exp(u * u) * k1 * k1 * k1 * k2 * k2 * k2;
    };
}

AFEResult afe_value(const CoefficientTable& t, const GL3Params& p,
                    const AFEConfig& cfg) {
    if (!(cfg.contour_sigma > 0.0) || cfg.contour_sigma > 4.0)
        throw ContourOutOfRange("afe: contour sigma must lie in (0, 4]");
    auto G = cfg.G ? cfg.G : afe_gaussian_g();
    Cx s = cfg.s;
    AFEResult out;

    double tpar = std::abs(s.imag());
    double vmax = 10.0 + cfg.contour_sigma;
    int panels = static_cast<int>(8.0 + 3.0 * vmax);

    struct Sum {
        Cx total{0.0, 0.0};
        double err = 0.0;
    };
    auto run_sum = [&](Cx seval, const GL3Params& par, bool dual_coeffs) {
        VsGrid coarse = make_vs_grid(seval, par, G, cfg.contour_sigma, panels, vmax);
        VsGrid fine = make_vs_grid(seval, par, G, cfg.contour_sigma, panels * 2, vmax);
        Sum sum;
        int64_t n_cap = cfg.truncation > 0 ? cfg.truncation
                                           : static_cast<int64_t>(1) << 40;
        int quiet = 0;
        double heuristic = 40.0 * std::pow(1.0 + tpar, 1.5);
        for (int64_t n = 1; n <= n_cap; ++n) {
            if (!t.has(1, n))
                throw InsufficientData("afe: table lacks lambda(1," +
                                       std::to_string(n) + ")");
            Cx lam = dual_coeffs ? std::conj(t.lambda(1, n)) : t.lambda(1, n);
            double y = static_cast<double>(n);
            Cx v1 = vs_eval(coarse, y), v2 = vs_eval(fine, y);
            Cx term = lam * std::pow(y, -seval) * v2;
            sum.total += term;
            sum.err += std::abs(lam * std::pow(y, -seval)) * std::abs(v2 - v1);
            double mag = std::abs(term);
            if (mag < cfg.tol && static_cast<double>(n) > heuristic)
                ++quiet;
            else
                quiet = 0;
            if (quiet >= 12) {
                sum.err += 4.0 * mag * 12.0;  // geometric tail allowance
                return sum;
            }
        }
        sum.err += 1e30;  // truncated before decay: flagged via warning below
        return sum;
    };

    Sum first = run_sum(s, p, false);
    out.value = first.total;
    out.err_est = first.err;
    if (first.err > 1e20) {
        out.warning = "truncation reached before V_s decay; result incomplete";
        out.err_est = std::numeric_limits<double>::infinity();
    }

    if (t.selfdual) {
        GL3Params pd = p.dual();
        Cx lX = log_gamma_factor(1.0 - s, pd) - log_gamma_factor(s, p);
        Cx X = std::exp(lX);
        Sum second = run_sum(1.0 - s, pd, true);
        out.value += X * second.total;
        out.err_est += std::abs(X) * second.err;
    } else {
        out.warning = "non-self-dual table: first AFE sum only";
    }
    return out;
}

}  // namespace gl3
}  // namespace gl3osc
