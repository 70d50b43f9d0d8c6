#pragma once

#include <cstdint>
#include <vector>

namespace tplab::kloosterman {

struct KloostermanQuery {
  std::uint64_t m = 1;
  std::uint64_t n = 1;
  std::uint64_t c = 1;
};

struct KloostermanValue {
  double value = 0.0;
  double imag_residual = 0.0;  // |imaginary part| accumulated by the direct sum
};

// Direct sum over units d mod c, modular inverses by extended Euclid,
// phases reduced exactly in integers and accumulated in long double.
// Throws std::invalid_argument when m, n or c is 0.
KloostermanValue kloosterman_direct(const KloostermanQuery& q);

inline double kloosterman(const KloostermanQuery& q) { return kloosterman_direct(q).value; }

// Same value via twisted multiplicativity over the prime-power factorization
// of c, each factor summed directly. Used for long c-sums.
double kloosterman_factored(const KloostermanQuery& q);

// count[k] = #{d mod c, gcd(d, c) = 1 : m d + n dbar = k mod c}. S(m, n; c) is
// sum_k count[k] cos(2 pi k / c), so equal histograms mean equal sums.
std::vector<std::uint64_t> residue_histogram(const KloostermanQuery& q);

std::uint64_t divisor_count(std::uint64_t n);

// tau(c) * sqrt(gcd(m, n, c)) * sqrt(c)
double weil_bound(const KloostermanQuery& q);

struct WeilCheck {
  bool holds = false;
  double value = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // bound - |value|
};

WeilCheck weil_bound_check(const KloostermanQuery& q);

// Inverse of a modulo c, a coprime to c, c >= 1.
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t c);

struct PrimePower {
  std::uint64_t p;
  unsigned e;
  std::uint64_t pe;
};

std::vector<PrimePower> factorize(std::uint64_t n);

}  // namespace tplab::kloosterman
