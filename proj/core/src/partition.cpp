#include "gl3osc/partition.hpp"

#include <cmath>

#include "gl3osc/errors.hpp"

namespace gl3osc {
namespace osc {

namespace {
// With rho = sqrt(4/3) and s a smoothstep rising on [1, rho], the family
//   W_0(x)   = 1 - s(rho |x|)
//   w_m(x)   = s(x/rho^m) - s(x/rho^{m+1}),  m = -1 .. M-1   (x > 0)
// telescopes to 1 - s(x/rho^M), i.e. to 1 for |x| <= rho^M, and each w_m
// is the fixed profile s(u) - s(u/rho) scaled to J = rho^m, supported on
// [J, rho^2 J] = [J, 4J/3].
const double RHO = std::sqrt(4.0 / 3.0);

SmoothWeight mirror(const SmoothWeight& w) {
    auto val = [w](double x) { return w.value(-x); };
    auto jet = [w](double x) {
        Jet j = w.jet(-x);
        double s = 1.0;
        Jet r;
        for (int k = 0; k <= JET_ORDER; ++k) {
            r.c[k] = j.c[k] * s;
            s = -s;
        }
        return r;
    };
    return SmoothWeight::from_functions(val, jet, -w.hi(), -w.lo(),
                                        w.profile(), w.name() + "_neg");
}
}  // namespace

std::vector<PartitionWeight> build_partition(double range_bound, int count_hint) {
    if (!(range_bound > 1.0))
        throw Error("build_partition: range_bound must be > 1");
    SmoothWeight s = SmoothWeight::smoothstep(1.0, RHO);

    int M = static_cast<int>(std::ceil(std::log(range_bound) / std::log(RHO)));
    if (count_hint > 0) {
        int wanted = (count_hint - 1) / 2 - 1;
        M = std::max(M, wanted);
    }

    std::vector<PartitionWeight> parts;
    // central piece: 1 - s(rho |x|), flat profile, supported in [-1, 1]
    {
        auto val = [s](double x) { return 1.0 - s.value(RHO * std::abs(x)); };
        auto jet = [s](double x) {
            if (std::abs(x) < 1.0 / (RHO * RHO)) return Jet::constant(1.0);
            double sign = x < 0.0 ? -1.0 : 1.0;
            Jet inner = s.jet(RHO * std::abs(x));
            Jet r;
            double f = 1.0;
            for (int k = 0; k <= JET_ORDER; ++k) {
                r.c[k] = -inner.c[k] * f;
                f *= RHO * sign;
            }
            r.c[0] += 1.0;
            return r;
        };
        SmoothWeight w0 = SmoothWeight::from_functions(
            val, jet, -1.0, 1.0, DerivativeProfile::Flat, "W0");
        parts.push_back({0.0, w0});
    }

    for (int m = -1; m < M; ++m) {
        double J = std::pow(RHO, m);
        double scale_hi = std::pow(RHO, m + 1);
        auto val = [s, J, scale_hi](double x) {
            return s.value(x / J) - s.value(x / scale_hi);
        };
        auto jet = [s, J, scale_hi](double x) {
            Jet j1 = s.jet(x / J), j2 = s.jet(x / scale_hi);
            Jet r;
            double f1 = 1.0, f2 = 1.0;
            for (int k = 0; k <= JET_ORDER; ++k) {
                r.c[k] = j1.c[k] * f1 - j2.c[k] * f2;
                f1 /= J;
                f2 /= scale_hi;
            }
            return r;
        };
        SmoothWeight w = SmoothWeight::from_functions(
            val, jet, J, J * RHO * RHO, DerivativeProfile::Dyadic, "WJ");
        parts.push_back({J, w});
        parts.push_back({-J, mirror(w)});
    }
    return parts;
}

}  // namespace osc
}  // namespace gl3osc
