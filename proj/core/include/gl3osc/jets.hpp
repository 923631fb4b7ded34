#pragma once
// Truncated Taylor series ("jets") of fixed order.  A Jet carries the value
// and the first JET_ORDER derivatives of a function at a point; arithmetic
// on jets propagates derivatives exactly (to rounding), which is how the
// smooth weights expose genuine C^inf derivative data up to order 6.

#include <array>
#include <cmath>
#include <cstddef>

namespace gl3osc {

inline constexpr int JET_ORDER = 8;  // keep 2 spare orders above j_max = 6

struct Jet {
    // c[k] = f^(k)(x0) / k!
    std::array<double, JET_ORDER + 1> c{};

    static Jet constant(double v) {
        Jet j;
        j.c[0] = v;
        return j;
    }
    // the identity map u -> u at base point x0
    static Jet variable(double x0) {
        Jet j;
        j.c[0] = x0;
        j.c[1] = 1.0;
        return j;
    }

    double value() const { return c[0]; }
    // k-th derivative (not the Taylor coefficient)
    double derivative(int k) const {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return c[static_cast<std::size_t>(k)] * f;
    }

    Jet operator-() const {
        Jet r;
        for (int k = 0; k <= JET_ORDER; ++k) r.c[k] = -c[k];
        return r;
    }
};

inline Jet operator+(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= JET_ORDER; ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
}
inline Jet operator-(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= JET_ORDER; ++k) r.c[k] = a.c[k] - b.c[k];
    return r;
}
inline Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= JET_ORDER; ++k) {
        double s = 0.0;
        for (int i = 0; i <= k; ++i) s += a.c[i] * b.c[k - i];
        r.c[k] = s;
    }
    return r;
}
inline Jet operator+(const Jet& a, double b) { return a + Jet::constant(b); }
inline Jet operator+(double a, const Jet& b) { return Jet::constant(a) + b; }
inline Jet operator-(const Jet& a, double b) { return a - Jet::constant(b); }
inline Jet operator-(double a, const Jet& b) { return Jet::constant(a) - b; }
inline Jet operator*(const Jet& a, double b) {
    Jet r;
    for (int k = 0; k <= JET_ORDER; ++k) r.c[k] = a.c[k] * b;
    return r;
}
inline Jet operator*(double a, const Jet& b) { return b * a; }

// long division of power series
inline Jet operator/(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= JET_ORDER; ++k) {
        double s = a.c[k];
        for (int i = 0; i < k; ++i) s -= r.c[i] * b.c[k - i];
        r.c[k] = s / b.c[0];
    }
    return r;
}
inline Jet operator/(double a, const Jet& b) { return Jet::constant(a) / b; }
inline Jet operator/(const Jet& a, double b) { return a * (1.0 / b); }

// exp via the ODE  (exp g)' = g' exp g:  k*e_k = sum_{j=1..k} j*g_j*e_{k-j}
inline Jet exp(const Jet& g) {
    Jet e;
    e.c[0] = std::exp(g.c[0]);
    for (int k = 1; k <= JET_ORDER; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += j * g.c[j] * e.c[k - j];
        e.c[k] = s / k;
    }
    return e;
}

// log via  (log g)' = g'/g:  k*l_k = k*g_k/g_0 - sum_{j=1..k-1} j*l_j*g_{k-j}/g_0
inline Jet log(const Jet& g) {
    Jet l;
    l.c[0] = std::log(g.c[0]);
    for (int k = 1; k <= JET_ORDER; ++k) {
        double s = k * g.c[k];
        for (int j = 1; j < k; ++j) s -= j * l.c[j] * g.c[k - j];
        l.c[k] = s / (k * g.c[0]);
    }
    return l;
}

inline Jet pow(const Jet& g, double p) { return exp(log(g) * p); }
inline Jet sqrt(const Jet& g) { return pow(g, 0.5); }

// Composition f(g(.)) where fcoef are the Taylor coefficients of f about
// g.value().  Horner on the nilpotent part of g.
inline Jet compose(const std::array<double, JET_ORDER + 1>& fcoef, const Jet& g) {
    Jet dg = g;
    dg.c[0] = 0.0;  // g - g(x0)
    Jet r = Jet::constant(fcoef[JET_ORDER]);
    for (int k = JET_ORDER - 1; k >= 0; --k) r = r * dg + fcoef[k];
    return r;
}

}  // namespace gl3osc
