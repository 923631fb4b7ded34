#pragma once
// Complex log-gamma via the Lanczos series (g = 7, 9 terms) completed by
// reflection for Re z < 1/2.  All gamma-factor quotients in the library
// are assembled as exp(sum of lgamma values), which keeps quotients finite
// where the individual Gamma values under/overflow (|Im z| beyond ~250)
// and makes log-branch offsets harmless.

#include <complex>

namespace gl3osc {

// principal-series log Gamma (branch may differ from the principal log by
// multiples of 2 pi i; exact after exponentiation of sums/differences)
std::complex<double> lgamma_complex(std::complex<double> z);
std::complex<double> gamma_complex(std::complex<double> z);

// distance from z to the nearest pole location {0,-1,-2,...}
double gamma_pole_distance(std::complex<double> z);

}  // namespace gl3osc
