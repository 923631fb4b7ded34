#include "gl3osc/gammafn.hpp"

#include <cmath>

namespace gl3osc {

namespace {
using Cx = std::complex<double>;

constexpr double PI = 3.14159265358979323846264338327950288;
constexpr double LOG_2PI_HALF = 0.91893853320467274178032973640562;  // log(2 pi)/2

constexpr int LANCZOS_G = 7;
constexpr double LANCZOS_P[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// log sin(pi z) without overflow for large |Im z|
Cx log_sin_pi(Cx z) {
    if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
    // Im z >= 0: sin(pi z) = -e^{-i pi z} (1 - e^{2 pi i z}) / (2i)
    Cx i_pi_z = Cx{0.0, PI} * z;
    Cx log_term = std::log(1.0 - std::exp(2.0 * i_pi_z));
    return -i_pi_z + log_term - Cx{std::log(2.0), 0.5 * PI};
}

Cx lgamma_right(Cx z) {
    // Lanczos on Re z >= 0.5
    z -= 1.0;
    Cx x{LANCZOS_P[0], 0.0};
    for (int i = 1; i < LANCZOS_G + 2; ++i) x += LANCZOS_P[i] / (z + static_cast<double>(i));
    Cx t = z + (LANCZOS_G + 0.5);
    return LOG_2PI_HALF + (z + 0.5) * std::log(t) - t + std::log(x);
}
}  // namespace

std::complex<double> lgamma_complex(std::complex<double> z) {
    if (z.real() >= 0.5) return lgamma_right(z);
    // reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1-z)
    return std::log(PI) - log_sin_pi(z) - lgamma_right(1.0 - z);
}

std::complex<double> gamma_complex(std::complex<double> z) {
    return std::exp(lgamma_complex(z));
}

double gamma_pole_distance(std::complex<double> z) {
    if (z.real() > 0.5) return std::abs(z);  // no pole nearby
    double k = std::round(z.real());
    if (k > 0.0) k = 0.0;
    return std::abs(z - Cx{k, 0.0});
}

}  // namespace gl3osc
