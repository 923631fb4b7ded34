#pragma once
// Exact modular and multiplicative arithmetic: Kloosterman sums by unit
// enumeration, the Poisson character sum coupling two Kloosterman sums,
// and divisor-type functions.  Everything here is a pure function.

#include <complex>
#include <cstdint>
#include <vector>

#include "gl3osc/errors.hpp"

namespace gl3osc {
namespace arith {

using std::int64_t;

int64_t gcd(int64_t a, int64_t b);
// inverse of a mod m via extended Euclid; requires gcd(a,m)=1, m>=1
int64_t modinv(int64_t a, int64_t m);
// number of divisors
int64_t divisor_count(int64_t n);
// d3(n) = #{(a,b,c): abc = n}
int64_t divisor3(int64_t n);

struct KloostermanArgs {
    int64_t a = 0;
    int64_t b = 0;
    int64_t c = 1;  // modulus, >= 1
};

// S(a,b;c) = sum over units x mod c of e((a x + b xbar)/c).
// Real up to rounding; enumeration is exact to ~1e-10 for c <= 1e4.
std::complex<double> kloosterman(const KloostermanArgs& args);
std::complex<double> kloosterman(int64_t a, int64_t b, int64_t c);

struct CharSumArgs {
    int64_t r1 = 1, r2 = 1;  // coprime to q1, q2
    int64_t q1 = 1, q2 = 1;
    int64_t n1 = 1;  // common divisor of q1 and q2
    int64_t n2 = 0;  // dual frequency
    int64_t q1hat() const { return q1 / n1; }
    int64_t q2hat() const { return q2 / n1; }
    void check() const;  // throws Error on violated invariants
};

// C = sum_{beta mod q1hat*q2hat} S(r1bar,beta;q1hat) S(r2bar,beta;q2hat)
//     * e(beta n2 / (q1hat q2hat))
std::complex<double> character_sum(const CharSumArgs& args);

// Weil-type bound d(c) sqrt(c) sqrt(gcd(a,b,c)) used by the property tests
double weil_bound(int64_t a, int64_t b, int64_t c);

}  // namespace arith
}  // namespace gl3osc
