#include "gl3osc/circle.hpp"

#include <cmath>
#include <numeric>

#include "gl3osc/arith.hpp"

namespace gl3osc {
namespace circle {

namespace {
constexpr double TWO_PI = 6.283185307179586476925286766559;

// int_0^1 e(-n x / m) dx, closed form
Complex x_integral(std::int64_t n, double m) {
    if (n == 0) return {1.0, 0.0};
    double w = static_cast<double>(n) / m;
    // (e(-w) - 1) / (-2 pi i w)
    Complex num = unit_phase(-w) - Complex{1.0, 0.0};
    Complex den{0.0, -TWO_PI * w};
    return num / den;
}
}  // namespace

std::vector<FareyTerm> farey_terms(const CircleConfig& cfg) {
    if (cfg.Q < 1) throw Error("farey_terms: Q must be >= 1");
    std::vector<FareyTerm> terms;
    for (std::int64_t q = 1; q <= cfg.Q; ++q) {
        for (std::int64_t a = cfg.Q + 1; a <= q + cfg.Q; ++a) {
            if (std::gcd(a, q) == 1) terms.push_back({q, a});
        }
    }
    return terms;
}

double delta_eval(std::int64_t n, const CircleConfig& cfg) {
    Complex sum{0.0, 0.0};
    for (const auto& t : farey_terms(cfg)) {
        std::int64_t abar = arith::modinv(t.a, t.q);
        std::int64_t r = (n % t.q) * abar % t.q;
        if (r < 0) r += t.q;
        double th = TWO_PI * static_cast<double>(r) / static_cast<double>(t.q);
        Complex twist{std::cos(th), std::sin(th)};
        double aq = static_cast<double>(t.a) * static_cast<double>(t.q);
        sum += twist * x_integral(n, aq) / aq;
    }
    return 2.0 * sum.real();
}

double delta_eval_quadrature(std::int64_t n, const CircleConfig& cfg) {
    if (!(cfg.quad_tol > 0.0)) throw Error("delta_eval_quadrature: quad_tol must be > 0");
    Complex sum{0.0, 0.0};
    for (const auto& t : farey_terms(cfg)) {
        std::int64_t abar = arith::modinv(t.a, t.q);
        std::int64_t r = (n % t.q) * abar % t.q;
        if (r < 0) r += t.q;
        double th = TWO_PI * static_cast<double>(r) / static_cast<double>(t.q);
        Complex twist{std::cos(th), std::sin(th)};
        double aq = static_cast<double>(t.a) * static_cast<double>(t.q);
        double freq = -static_cast<double>(n) / aq;  // cycles per unit x
        auto integrand = [freq](double x) { return unit_phase(freq * x); };
        OscResult xi = integrate_adaptive(integrand, 0.0, 1.0, cfg.quad_tol,
                                          std::abs(freq));
        sum += twist * xi.value / aq;
    }
    return 2.0 * sum.real();
}

}  // namespace circle
}  // namespace gl3osc
