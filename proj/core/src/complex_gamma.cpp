#include "tplab/complex_gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tplab::special {

namespace {

using cd = std::complex<double>;

// B_{2k} / (2k (2k-1)), k = 1..10
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

constexpr double kShiftRadius = 15.0;

cd stirling(cd z) {
  const cd inv = 1.0 / z;
  const cd inv2 = inv * inv;
  cd series = 0.0;
  cd power = inv;
  for (double c : kStirling) {
    series += c * power;
    power *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

// log(sin(pi z)) without overflow for large |Im z|
cd log_sin_pi(cd z) {
  const cd ipz = cd(0.0, std::numbers::pi) * z;
  const cd log_2i = std::log(cd(0.0, 2.0));
  if (z.imag() > 1.0) return -ipz + std::log(std::exp(2.0 * ipz) - 1.0) - log_2i;
  if (z.imag() < -1.0) return ipz + std::log(1.0 - std::exp(-2.0 * ipz)) - log_2i;
  return std::log(std::sin(std::numbers::pi * z));
}

cd log_gamma_right(cd z) {
  cd shift = 0.0;
  while (std::abs(z) < kShiftRadius) {
    shift += std::log(z);
    z += 1.0;
  }
  return stirling(z) - shift;
}

}  // namespace

cd log_gamma(cd z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw std::domain_error("log_gamma: pole at non-positive integer");
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(std::numbers::pi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
  }
  return log_gamma_right(z);
}

cd log_gamma_r(cd s) {
  return -0.5 * s * std::log(std::numbers::pi) + log_gamma(0.5 * s);
}

}  // namespace tplab::special
