#include "tplab/kloosterman.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace tplab::kloosterman {

namespace {

__extension__ typedef unsigned __int128 u128;
__extension__ typedef __int128 i128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % c);
}

void validate(const KloostermanQuery& q) {
  if (q.m == 0 || q.n == 0 || q.c == 0)
    throw std::invalid_argument("kloosterman: m, n, c must be positive");
}

// Kahan-compensated cosine/sine sum of 2 pi k/c over the unit orbit.
KloostermanValue direct_sum(std::uint64_t m, std::uint64_t n, std::uint64_t c) {
  if (c == 1) return {1.0, 0.0};
  m %= c;
  n %= c;
  const long double step = 2.0L * std::numbers::pi_v<long double> / static_cast<long double>(c);
  long double re = 0.0L, re_comp = 0.0L, im = 0.0L, im_comp = 0.0L;
  for (std::uint64_t d = 1; d < c; ++d) {
    if (std::gcd(d, c) != 1) continue;
    const std::uint64_t dinv = mod_inverse(d, c);
    const std::uint64_t k = (mulmod(m, d, c) + mulmod(n, dinv, c)) % c;
    const long double angle = step * static_cast<long double>(k);
    const long double yr = std::cos(angle) - re_comp;
    const long double tr = re + yr;
    re_comp = (tr - re) - yr;
    re = tr;
    const long double yi = std::sin(angle) - im_comp;
    const long double ti = im + yi;
    im_comp = (ti - im) - yi;
    im = ti;
  }
  return {static_cast<double>(re), static_cast<double>(std::abs(im))};
}

// Real part only, for a prime power modulus. Histogram of k = m d + n dbar mod c,
// folded with k <-> c - k.
double fast_prime_power_sum(std::uint64_t m, std::uint64_t n, std::uint64_t p, std::uint64_t c) {
  if (c == 1) return 1.0;
  m %= c;
  n %= c;
  std::vector<std::uint32_t> count(c, 0);
  if (c == p && c < (1ULL << 31)) {
    std::vector<std::uint64_t> inv(c, 0);
    inv[1] = 1;
    for (std::uint64_t d = 2; d < c; ++d) inv[d] = (c - (c / d) * inv[c % d] % c) % c;
    for (std::uint64_t d = 1; d < c; ++d) ++count[(m * d + n * inv[d]) % c];
  } else {
    for (std::uint64_t d = 1; d < c; ++d) {
      if (d % p == 0) continue;
      ++count[(mulmod(m, d, c) + mulmod(n, mod_inverse(d, c), c)) % c];
    }
  }
  const double step = 2.0 * std::numbers::pi / static_cast<double>(c);
  double sum = static_cast<double>(count[0]), comp = 0.0;
  for (std::uint64_t k = 1; 2 * k < c; ++k) {
    if (count[k] == 0) continue;
    const double term = 2.0 * count[k] * std::cos(step * static_cast<double>(k));
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  if (c % 2 == 0) sum -= static_cast<double>(count[c / 2]);
  return sum + comp;
}

}  // namespace

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t c) {
  if (c == 1) return 0;
  i128 t = 0, new_t = 1;
  i128 r = c, new_r = a % c;
  while (new_r != 0) {
    const i128 quot = r / new_r;
    i128 tmp = t - quot * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quot * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::invalid_argument("mod_inverse: argument not invertible");
  if (t < 0) t += c;
  return static_cast<std::uint64_t>(t);
}

KloostermanValue kloosterman_direct(const KloostermanQuery& q) {
  validate(q);
  return direct_sum(q.m, q.n, q.c);
}

std::vector<PrimePower> factorize(std::uint64_t n) {
  std::vector<PrimePower> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.e;
      pp.pe *= p;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

double kloosterman_factored(const KloostermanQuery& q) {
  validate(q);
  // S(m,n; c1 c2) = S(m cb2^2, n; c1) S(m cb1^2, n; c2), cb_i inverse of c_j mod c_i
  double value = 1.0;
  for (const PrimePower& f : factorize(q.c)) {
    const std::uint64_t rest = q.c / f.pe;
    const std::uint64_t inv = mod_inverse(rest % f.pe, f.pe);
    const std::uint64_t m_twist = mulmod(q.m % f.pe, mulmod(inv, inv, f.pe), f.pe);
    value *= fast_prime_power_sum(m_twist, q.n, f.p, f.pe);
    if (value == 0.0) break;
  }
  return value;
}

std::vector<std::uint64_t> residue_histogram(const KloostermanQuery& q) {
  validate(q);
  std::vector<std::uint64_t> count(q.c, 0);
  if (q.c == 1) {
    count[0] = 1;
    return count;
  }
  for (std::uint64_t d = 1; d < q.c; ++d) {
    if (std::gcd(d, q.c) != 1) continue;
    ++count[(mulmod(q.m % q.c, d, q.c) + mulmod(q.n % q.c, mod_inverse(d, q.c), q.c)) % q.c];
  }
  return count;
}

std::uint64_t divisor_count(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("divisor_count: n must be positive");
  std::uint64_t count = 1;
  for (const PrimePower& f : factorize(n)) count *= (f.e + 1);
  return count;
}

double weil_bound(const KloostermanQuery& q) {
  validate(q);
  const std::uint64_t g = std::gcd(std::gcd(q.m, q.n), q.c);
  return static_cast<double>(divisor_count(q.c)) * std::sqrt(static_cast<double>(g)) *
         std::sqrt(static_cast<double>(q.c));
}

WeilCheck weil_bound_check(const KloostermanQuery& q) {
  WeilCheck w;
  w.value = kloosterman(q);
  w.bound = weil_bound(q);
  w.margin = w.bound - std::abs(w.value);
  w.holds = w.margin >= -1e-9;
  return w;
}

}  // namespace tplab::kloosterman
