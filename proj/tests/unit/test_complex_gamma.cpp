#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "tplab/complex_gamma.hpp"

using tplab::special::log_gamma;
using tplab::special::log_gamma_r;
using C = std::complex<double>;

namespace {

struct Ref {
  C z;
  double re, im;
};

// mpmath loggamma at 30 digits
const Ref kRefs[] = {
    {{0.5, 10.0}, -14.789024734744293451, 13.030020034911089851},
    {{-2.5, 0.3}, -0.43208889261320192052, -9.0933454212897415073},
    {{3.0, 4.0}, -1.7566267846037841105, 4.7426644380346579282},
    {{1e-3, 1e-3}, 6.5606044738375526187, -0.78597373492965343485},
    {{20.0, -30.0}, 21.345074493863444896, -96.714347689536180139},
    {{-7.2, -15.5}, -44.827473996998184254, -13.049256187171517332},
    {{1.0, 0.0}, 0.0, 0.0},
    {{0.25, 100.0}, -157.31198591151980437, 360.12442368392899024},
};

}  // namespace

TEST(LogGamma, MatchesReferenceValues) {
  for (const auto& r : kRefs) {
    const C v = log_gamma(r.z);
    const double scale = std::max(1.0, std::abs(C(r.re, r.im)));
    EXPECT_NEAR(v.real(), r.re, 1e-13 * scale) << r.z;
    // the argument is fixed only modulo 2 pi
    EXPECT_NEAR(std::remainder(v.imag() - r.im, 2.0 * std::numbers::pi), 0.0, 1e-13 * scale) << r.z;
  }
}

TEST(LogGamma, RealAxisAgreesWithLgamma) {
  for (double x = 0.1; x < 60.0; x += 0.37) EXPECT_NEAR(log_gamma(C(x, 0.0)).real(), std::lgamma(x), 1e-12 * std::max(1.0, std::abs(std::lgamma(x))));
}

TEST(LogGamma, RecurrenceAndConjugation) {
  for (double y : {-40.0, -3.0, 0.2, 5.0, 80.0}) {
    for (double x : {-4.3, -0.5, 0.7, 2.5, 11.0}) {
      const C z(x, y);
      const C lhs = log_gamma(z + 1.0);
      const C rhs = log_gamma(z) + std::log(z);
      // equal modulo 2 pi i
      const double k = std::round((lhs - rhs).imag() / (2.0 * std::numbers::pi));
      EXPECT_NEAR(lhs.real(), rhs.real(), 1e-11 * std::max(1.0, std::abs(lhs)));
      EXPECT_NEAR(lhs.imag() - 2.0 * std::numbers::pi * k, rhs.imag(), 1e-10 * std::max(1.0, std::abs(lhs)));
      const double c = log_gamma(std::conj(z)).imag() + log_gamma(z).imag();
      EXPECT_NEAR(std::remainder(c, 2.0 * std::numbers::pi), 0.0, 1e-11 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST(LogGamma, PolesThrow) {
  EXPECT_THROW(log_gamma(C(0.0, 0.0)), std::domain_error);
  EXPECT_THROW(log_gamma(C(-3.0, 0.0)), std::domain_error);
}

TEST(LogGamma, ModulusOnCriticalLine) {
  // |Gamma(1/2 + it)|^2 = pi / cosh(pi t)
  for (double t : {0.5, 3.0, 17.0, 150.0}) {
    const double lhs = 2.0 * log_gamma(C(0.5, t)).real();
    const double rhs = std::log(std::numbers::pi) - (std::numbers::pi * t + std::log1p(std::exp(-2.0 * std::numbers::pi * t)) - std::numbers::ln2);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST(LogGamma, GammaR) {
  // Gamma_R(1) = 1 and Gamma_R(2) = 1/pi
  EXPECT_NEAR(std::abs(log_gamma_r(C(1.0, 0.0))), 0.0, 1e-14);
  EXPECT_NEAR(log_gamma_r(C(2.0, 0.0)).real(), -std::log(std::numbers::pi), 1e-15);
}
