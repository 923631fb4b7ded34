#pragma once
// Kloosterman-refinement circle method: the exact expansion
//   delta(n=0) = 2 Re sum_{1<=q<=Q<a<=q+Q, (a,q)=1} (1/aq)
//                e(n abar / q) int_0^1 e(-n x / aq) dx
// evaluated term by term.  The x-integral has a closed form, which is the
// reference; the quadrature variant reroutes it through the shared
// oscillatory engine to validate that engine against an exact identity.

#include <cstdint>
#include <vector>

#include "gl3osc/quadrature.hpp"

namespace gl3osc {
namespace circle {

struct CircleConfig {
    std::int64_t Q = 1;       // Farey parameter, >= 1
    double quad_tol = 1e-10;  // absolute tolerance for the quadrature path
};

struct FareyTerm {
    std::int64_t q = 1;
    std::int64_t a = 2;  // in (Q, q+Q], gcd(a,q) = 1
};

// all admissible (q,a), sorted by (q,a)
std::vector<FareyTerm> farey_terms(const CircleConfig& cfg);

// closed-form x-integral; equals delta(n=0) up to rounding for integer n
double delta_eval(std::int64_t n, const CircleConfig& cfg);

// same identity with the x-integral done by the adaptive engine
double delta_eval_quadrature(std::int64_t n, const CircleConfig& cfg);

}  // namespace circle
}  // namespace gl3osc
