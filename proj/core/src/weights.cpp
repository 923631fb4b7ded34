#include "gl3osc/weights.hpp"

#include <cmath>
#include <utility>

namespace gl3osc {

namespace {

// exp(-u^2/(1-u^2)) on (-1,1); value 1 at u=0, identically 0 outside.
double bump_profile(double u) {
    double w = 1.0 - u * u;
    if (w <= 0.0) return 0.0;
    double e = -u * u / w;
    if (e < -700.0) return 0.0;
    return std::exp(e);
}

Jet bump_profile_jet(double u) {
    double w = 1.0 - u * u;
    if (w <= 1e-300) return Jet{};
    if (-u * u / w < -700.0) return Jet{};
    Jet uj = Jet::variable(u);
    return exp(-(uj * uj) / (1.0 - uj * uj));
}

// B(t) = exp(-1/t) for t>0 else 0; sfun = B(t)/(B(t)+B(1-t)) rises 0 -> 1 on [0,1]
double sfun(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double b0 = std::exp(-1.0 / t);
    double b1 = std::exp(-1.0 / (1.0 - t));
    return b0 / (b0 + b1);
}

Jet sfun_jet(double t) {
    if (t <= 0.0) return Jet{};
    if (t >= 1.0) return Jet::constant(1.0);
    Jet tj = Jet::variable(t);
    Jet b0 = exp(-1.0 / tj);
    Jet b1 = exp(-1.0 / (1.0 - tj));
    return b0 / (b0 + b1);
}

}  // namespace

SmoothWeight SmoothWeight::from_functions(std::function<double(double)> val,
                                          std::function<Jet(double)> jet,
                                          double lo, double hi,
                                          DerivativeProfile profile,
                                          std::string name) {
    SmoothWeight w;
    w.val_ = std::move(val);
    w.jet_ = std::move(jet);
    w.lo_ = lo;
    w.hi_ = hi;
    w.profile_ = profile;
    w.name_ = std::move(name);
    return w;
}

SmoothWeight SmoothWeight::bump(double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    auto val = [mid, half](double x) { return bump_profile((x - mid) / half); };
    auto jet = [mid, half](double x) {
        Jet u = bump_profile_jet((x - mid) / half);
        // chain rule for the affine substitution: coefficient k picks (1/half)^k
        Jet r;
        double s = 1.0;
        for (int k = 0; k <= JET_ORDER; ++k) {
            r.c[k] = u.c[k] * s;
            s /= half;
        }
        return r;
    };
    return from_functions(val, jet, a, b, DerivativeProfile::Flat, "bump");
}

SmoothWeight SmoothWeight::smoothstep(double a, double b) {
    double len = b - a;
    auto val = [a, len](double x) { return sfun((x - a) / len); };
    auto jet = [a, len](double x) {
        Jet u = sfun_jet((x - a) / len);
        Jet r;
        double s = 1.0;
        for (int k = 0; k <= JET_ORDER; ++k) {
            r.c[k] = u.c[k] * s;
            s /= len;
        }
        return r;
    };
    // support is [a, +inf) as a "rising edge"; callers combine edges
    return from_functions(val, jet, a, std::numeric_limits<double>::infinity(),
                          DerivativeProfile::Flat, "smoothstep");
}

SmoothWeight SmoothWeight::plateau(double a, double b, double c, double d) {
    SmoothWeight up = smoothstep(a, b);
    SmoothWeight down = smoothstep(-d, -c);  // falling edge via reflection
    auto val = [up, down](double x) { return up.value(x) * down.value(-x); };
    auto jet = [up, down](double x) {
        Jet j1 = up.jet(x);
        Jet j2 = down.jet(-x);
        Jet j2r;  // reflect: coefficients pick (-1)^k
        double s = 1.0;
        for (int k = 0; k <= JET_ORDER; ++k) {
            j2r.c[k] = j2.c[k] * s;
            s = -s;
        }
        return j1 * j2r;
    };
    return from_functions(val, jet, a, d, DerivativeProfile::Flat, "plateau");
}

SmoothWeight SmoothWeight::constant(double v, double a, double b) {
    auto val = [v](double) { return v; };
    auto jet = [v](double) { return Jet::constant(v); };
    return from_functions(val, jet, a, b, DerivativeProfile::None, "constant");
}

SmoothWeight SmoothWeight::power_scaled(double sigma) const {
    SmoothWeight base = *this;
    auto val = [base, sigma](double x) {
        double v = base.value(x);
        return v == 0.0 ? 0.0 : std::pow(x, sigma) * v;
    };
    auto jet = [base, sigma](double x) {
        Jet b = base.jet(x);
        if (x <= 0.0) return Jet{};
        return pow(Jet::variable(x), sigma) * b;
    };
    return from_functions(val, jet, lo_, hi_, profile_,
                          name_ + "_pow");
}

SmoothWeight SmoothWeight::scaled_arg(double scale) const {
    SmoothWeight base = *this;
    auto val = [base, scale](double x) { return base.value(x / scale); };
    auto jet = [base, scale](double x) {
        Jet u = base.jet(x / scale);
        Jet r;
        double s = 1.0;
        for (int k = 0; k <= JET_ORDER; ++k) {
            r.c[k] = u.c[k] * s;
            s /= scale;
        }
        return r;
    };
    return from_functions(val, jet, lo_ * scale, hi_ * scale, profile_,
                          name_ + "_scaled");
}

double SmoothWeight::total_variation(double a, double b) const {
    // |g'| is piecewise smooth; composite Simpson with doubling
    auto f = [this](double x) { return std::abs(this->derivative(x, 1)); };
    int n = 64;
    double prev = 0.0;
    for (int iter = 0; iter < 14; ++iter) {
        double h = (b - a) / n;
        double s = f(a) + f(b);
        for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
        double cur = s * h / 3.0;
        if (iter > 2 && std::abs(cur - prev) <= 1e-9 * (1.0 + std::abs(cur)))
            return cur;
        prev = cur;
        n *= 2;
    }
    return prev;
}

double SmoothWeight::total_variation() const {
    double a = lo_, b = hi_;
    if (!std::isfinite(a) || !std::isfinite(b)) {
        a = std::isfinite(a) ? a : -1e3;
        b = std::isfinite(b) ? b : 1e3;
    }
    return total_variation(a, b);
}

SmoothWeight canonical_v() { return SmoothWeight::bump(1.0, 2.0); }
SmoothWeight canonical_u() { return SmoothWeight::plateau(0.5, 1.0, 2.0, 2.5); }

}  // namespace gl3osc
