#include "gl3osc/arith.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace gl3osc {
namespace arith {

namespace {
constexpr double TWO_PI = 6.283185307179586476925286766559;

std::complex<double> e_frac(int64_t num, int64_t den) {
    // e(num/den) with the fraction reduced into [0,1) first, so large
    // numerators lose no precision
    int64_t r = num % den;
    if (r < 0) r += den;
    double th = TWO_PI * (static_cast<double>(r) / static_cast<double>(den));
    return {std::cos(th), std::sin(th)};
}
}  // namespace

int64_t gcd(int64_t a, int64_t b) { return std::gcd(a, b); }

int64_t modinv(int64_t a, int64_t m) {
    if (m < 1) throw Error("modinv: modulus must be >= 1");
    if (m == 1) return 0;
    int64_t r0 = m, r1 = ((a % m) + m) % m;
    int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        int64_t q = r0 / r1;
        int64_t r2 = r0 - q * r1;
        int64_t s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1)
        throw Error("modinv: " + std::to_string(a) + " not invertible mod " +
                    std::to_string(m));
    return ((s0 % m) + m) % m;
}

int64_t divisor_count(int64_t n) {
    int64_t cnt = 0;
    for (int64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) cnt += (d * d == n) ? 1 : 2;
    }
    return cnt;
}

int64_t divisor3(int64_t n) {
    if (n < 1) throw Error("divisor3: n must be >= 1");
    // multiplicative: d3(p^e) = (e+1)(e+2)/2
    int64_t result = 1;
    int64_t m = n;
    for (int64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            int64_t e = 0;
            while (m % p == 0) { m /= p; ++e; }
            result *= (e + 1) * (e + 2) / 2;
        }
    }
    if (m > 1) result *= 3;  // leftover prime, e = 1
    return result;
}

std::complex<double> kloosterman(const KloostermanArgs& args) {
    return kloosterman(args.a, args.b, args.c);
}

std::complex<double> kloosterman(int64_t a, int64_t b, int64_t c) {
    if (c < 1) throw Error("kloosterman: modulus must be >= 1");
    if (c == 1) return {1.0, 0.0};
    std::complex<double> s{0.0, 0.0};
    for (int64_t x = 1; x < c; ++x) {
        if (std::gcd(x, c) != 1) continue;
        int64_t xbar = modinv(x, c);
        s += e_frac(a * x + b * xbar, c);
    }
    return s;
}

void CharSumArgs::check() const {
    if (q1 < 1 || q2 < 1) throw Error("character_sum: q1,q2 must be >= 1");
    if (n1 < 1 || q1 % n1 != 0 || q2 % n1 != 0)
        throw Error("character_sum: n1 must divide both q1 and q2");
    if (std::gcd(r1, q1) != 1 || std::gcd(r2, q2) != 1)
        throw Error("character_sum: need gcd(r1,q1) = gcd(r2,q2) = 1");
}

std::complex<double> character_sum(const CharSumArgs& args) {
    args.check();
    int64_t qh1 = args.q1hat(), qh2 = args.q2hat();
    int64_t r1bar = modinv(args.r1, qh1 == 1 ? 1 : qh1);
    int64_t r2bar = modinv(args.r2, qh2 == 1 ? 1 : qh2);

    // precompute S(r_bar, beta; q_hat) for beta mod q_hat
    auto kl_row = [](int64_t rbar, int64_t qh) {
        std::vector<std::complex<double>> row(static_cast<std::size_t>(qh));
        for (int64_t beta = 0; beta < qh; ++beta)
            row[static_cast<std::size_t>(beta)] = kloosterman(rbar, beta, qh);
        return row;
    };
    auto row1 = kl_row(r1bar, qh1);
    auto row2 = kl_row(r2bar, qh2);

    int64_t mod = qh1 * qh2;
    std::complex<double> total{0.0, 0.0};
    for (int64_t beta = 0; beta < mod; ++beta) {
        total += row1[static_cast<std::size_t>(beta % qh1)] *
                 row2[static_cast<std::size_t>(beta % qh2)] *
                 e_frac(beta * args.n2, mod);
    }
    return total;
}

double weil_bound(int64_t a, int64_t b, int64_t c) {
    int64_t g = std::gcd(std::gcd(((a % c) + c) % c, ((b % c) + c) % c), c);
    if (g == 0) g = c;
    return static_cast<double>(divisor_count(c)) * std::sqrt(static_cast<double>(c)) *
           std::sqrt(static_cast<double>(g));
}

}  // namespace arith
}  // namespace gl3osc
