#pragma once

#include <complex>

namespace tplab::special {

// A logarithm of Gamma(z) for complex z away from the poles. The real part is
// log|Gamma(z)|; the imaginary part is an argument of Gamma(z), not
// necessarily the principal branch of the continuous log-gamma.
// Relative accuracy of exp(log_gamma(z)) is about 1e-14 in the tested range.
std::complex<double> log_gamma(std::complex<double> z);

// log Gamma_R(s) with Gamma_R(s) = pi^{-s/2} Gamma(s/2).
std::complex<double> log_gamma_r(std::complex<double> s);

}  // namespace tplab::special
