#pragma once
// Smooth compactly supported weights with exact derivative data.
//
// The weight zoo used throughout:
//   bump(a,b)        exp(-u^2/(1-u^2)) profile, =1 at the midpoint,
//                    vanishes with all derivatives at a and b
//   plateau(a,b,c,d) =1 on [b,c], smooth ramps on [a,b] and [c,d]
//   constant(v,a,b)  flat v on [a,b] (no vanishing at the ends; used as a
//                    plain integrand factor, not as a bump)
// Derivatives up to JET_ORDER come from jet arithmetic, not finite
// differences.

#include <functional>
#include <limits>
#include <memory>
#include <string>

#include "gl3osc/jets.hpp"

namespace gl3osc {

enum class DerivativeProfile {
    Flat,    // ||g^(j)||_inf <= C_j          (U/V type)
    Dyadic,  // |x^k g^(k)(x)| <= C_k         (W_J type)
    None,    // no profile asserted
};

class SmoothWeight {
public:
    SmoothWeight() = default;

    static SmoothWeight bump(double a, double b);
    static SmoothWeight plateau(double a, double b, double c, double d);
    static SmoothWeight constant(double v, double a, double b);
    // rising smoothstep: 0 for x <= a, 1 for x >= b
    static SmoothWeight smoothstep(double a, double b);
    static SmoothWeight from_functions(std::function<double(double)> val,
                                       std::function<Jet(double)> jet,
                                       double lo, double hi,
                                       DerivativeProfile profile,
                                       std::string name);

    double value(double x) const { return val_ ? val_(x) : 0.0; }
    double operator()(double x) const { return value(x); }
    Jet jet(double x) const { return jet_(x); }
    // k-th derivative at x, k <= JET_ORDER
    double derivative(double x, int k) const { return jet_(x).derivative(k); }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    bool in_support(double x) const { return x > lo_ && x < hi_; }
    DerivativeProfile profile() const { return profile_; }
    const std::string& name() const { return name_; }

    // U_0(sigma, x) := x^sigma U(x); support unchanged (must lie in (0,inf))
    SmoothWeight power_scaled(double sigma) const;
    SmoothWeight scaled_arg(double scale) const;  // x -> g(x/scale), support scaled
    // total variation on the support: integral of |g'|
    double total_variation() const;
    double total_variation(double a, double b) const;

private:
    std::function<double(double)> val_;
    std::function<Jet(double)> jet_;
    double lo_ = 0.0, hi_ = 0.0;
    DerivativeProfile profile_ = DerivativeProfile::None;
    std::string name_;
};

// canonical weights of the pipeline: V is a [1,2] bump, U a [1/2,5/2]
// plateau equal to 1 on [1,2], so U*V = V
SmoothWeight canonical_v();
SmoothWeight canonical_u();

// product weight g(x,y) = gx(x)*gy(y); d2xy is exact via jets
struct ProductWeight2D {
    SmoothWeight gx, gy;
    double value(double x, double y) const { return gx.value(x) * gy.value(y); }
    double d2xy(double x, double y) const {
        return gx.derivative(x, 1) * gy.derivative(y, 1);
    }
};

}  // namespace gl3osc
