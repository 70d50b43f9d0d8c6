#include "tplab/satake.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tplab/complex_gamma.hpp"
#include "tplab/parallel.hpp"

namespace tplab::satake {

InverseFactor polynomial_from_roots(std::span<const Complex> roots) {
  InverseFactor poly{Complex(1.0, 0.0)};
  for (const Complex& g : roots) {
    poly.push_back(Complex(0.0, 0.0));
    for (std::size_t k = poly.size() - 1; k >= 1; --k) poly[k] -= g * poly[k - 1];
  }
  return poly;
}

// ---- GL2Local ---------------------------------------------------------------

GL2Local GL2Local::unramified(std::uint64_t p, Complex alpha) {
  if (p < 2) throw std::invalid_argument("GL2Local: prime must be >= 2");
  const double mod = std::abs(alpha);
  if (!(mod > 0.0))
    throw std::invalid_argument("GL2Local: Satake parameter must be nonzero");
  const double exponent = std::abs(std::log(mod) / std::log(static_cast<double>(p)));
  if (exponent > kKimSarnakExponent + 1e-12)
    throw std::invalid_argument("GL2Local: |log_p|alpha|| = " + std::to_string(exponent) +
                                " exceeds 7/64");
  return GL2Local(Kind::unramified, p, alpha, 0);
}

GL2Local GL2Local::tempered(std::uint64_t p, double theta) {
  return unramified(p, std::polar(1.0, theta));
}

GL2Local GL2Local::special(std::uint64_t p, int sign) {
  if (p < 2) throw std::invalid_argument("GL2Local: prime must be >= 2");
  if (sign != 1 && sign != -1) throw std::invalid_argument("GL2Local: sign must be +1 or -1");
  return GL2Local(Kind::special, p, Complex(0.0, 0.0), sign);
}

Complex GL2Local::lambda() const {
  if (is_special()) throw std::invalid_argument("GL2Local::lambda: special representation");
  return alpha_ + 1.0 / alpha_;
}

// ---- LocalSatake ------------------------------------------------------------

Complex LocalSatake::trace() const {
  Complex s = 0.0;
  for (const auto& a : params_) s += a;
  return s;
}

Complex LocalSatake::product() const {
  Complex s = 1.0;
  for (const auto& a : params_) s *= a;
  return s;
}

bool LocalSatake::closed_under_inversion(double tol) const {
  std::vector<Complex> inv;
  inv.reserve(params_.size());
  for (const auto& a : params_) inv.push_back(1.0 / a);
  return multiset_distance(*this, LocalSatake(std::move(inv))) <= tol;
}

LocalSatake satake_of(const GL2Local& g) {
  if (g.is_special())
    throw std::invalid_argument("satake_of: special representations have one parameter");
  return LocalSatake({g.alpha(), 1.0 / g.alpha()});
}

LocalSatake lift_sym(unsigned k, const GL2Local& g) {
  if (g.is_special()) throw std::invalid_argument("lift_sym: ramified lifts are not supported");
  if (k != 2 && k != 4) throw std::invalid_argument("lift_sym: k must be 2 or 4");
  std::vector<Complex> out;
  const Complex a = g.alpha();
  for (int e = static_cast<int>(k); e >= -static_cast<int>(k); e -= 2) out.push_back(std::pow(a, e));
  return LocalSatake(std::move(out));
}

LocalSatake rankin_selberg(const LocalSatake& a, const LocalSatake& b) {
  std::vector<Complex> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a.params())
    for (const auto& y : b.params()) out.push_back(x * y);
  return LocalSatake(std::move(out));
}

LocalSatake multiset_union(const LocalSatake& a, const LocalSatake& b) {
  std::vector<Complex> out = a.params();
  out.insert(out.end(), b.params().begin(), b.params().end());
  return LocalSatake(std::move(out));
}

double multiset_distance(const LocalSatake& a, const LocalSatake& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& x : a.params()) {
    std::size_t best = b.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - b.params()[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_d);
  }
  return worst;
}

FactorizationCheck factorization_check(std::uint64_t p, Complex alpha, double tol) {
  const GL2Local g = GL2Local::unramified(p, alpha);
  const LocalSatake s2 = lift_sym(2, g);
  const LocalSatake lhs = rankin_selberg(s2, s2);
  const LocalSatake rhs = multiset_union(multiset_union(lift_sym(4, g), s2), LocalSatake({1.0}));
  FactorizationCheck r;
  r.multiset_residual = multiset_distance(lhs, rhs);
  const Complex l2 = s2.trace();
  const Complex l4 = lift_sym(4, g).trace();
  r.trace_residual = std::abs(l2 * l2 - (l4 + l2 + 1.0));
  r.residual = std::max(r.multiset_residual, r.trace_residual);
  r.holds = r.residual <= tol;
  return r;
}

TripleFactor triple_local_factor(const GL2Local& a, const GL2Local& b, const GL2Local& c) {
  const std::uint64_t p = a.prime();
  if (b.prime() != p || c.prime() != p)
    throw std::invalid_argument("triple_local_factor: components at different primes");
  // the factor is symmetric, so order unramified components first
  std::vector<GL2Local> v{a, b, c};
  std::stable_partition(v.begin(), v.end(), [](const GL2Local& g) { return !g.is_special(); });
  const auto n_special = std::count_if(v.begin(), v.end(), [](const GL2Local& g) { return g.is_special(); });
  const double pd = static_cast<double>(p);
  TripleFactor out;
  out.p = p;
  switch (n_special) {
    case 0:
      for (double e1 : {1.0, -1.0})
        for (double e2 : {1.0, -1.0})
          for (double e3 : {1.0, -1.0})
            out.roots.push_back(std::pow(v[0].alpha(), e1) * std::pow(v[1].alpha(), e2) *
                                std::pow(v[2].alpha(), e3));
      break;
    case 1: {
      const double chi = v[2].sign() / std::sqrt(pd);
      for (double e1 : {1.0, -1.0})
        for (double e2 : {1.0, -1.0})
          out.roots.push_back(std::pow(v[0].alpha(), e1) * std::pow(v[1].alpha(), e2) * chi);
      break;
    }
    case 2: {
      const double chi = static_cast<double>(v[1].sign() * v[2].sign());
      for (double e1 : {1.0, -1.0}) out.roots.push_back(std::pow(v[0].alpha(), e1) * chi);
      for (double e1 : {1.0, -1.0}) out.roots.push_back(std::pow(v[0].alpha(), e1) * chi / pd);
      break;
    }
    default: {
      const double chi = static_cast<double>(v[0].sign() * v[1].sign() * v[2].sign());
      out.roots.push_back(Complex(chi / std::sqrt(pd), 0.0));
      out.roots.push_back(Complex(chi / std::sqrt(pd), 0.0));
      out.roots.push_back(Complex(chi / (pd * std::sqrt(pd)), 0.0));
      break;
    }
  }
  out.coefficients = polynomial_from_roots(out.roots);
  return out;
}

InverseFactor sym2_local_factor(const GL2Local& g) {
  if (g.is_special()) {
    const Complex root = 1.0 / static_cast<double>(g.prime());
    return polynomial_from_roots(std::span<const Complex>(&root, 1));
  }
  return lift_sym(2, g).inverse_factor();
}

// ---- Dirichlet series -------------------------------------------------------

std::vector<Complex> invert_series(const InverseFactor& poly, unsigned depth) {
  std::vector<Complex> a(depth + 1, Complex(0.0, 0.0));
  a[0] = 1.0;
  for (unsigned k = 1; k <= depth; ++k) {
    Complex s = 0.0;
    for (unsigned i = 1; i <= std::min<std::size_t>(k, poly.size() - 1); ++i) s += poly[i] * a[k - i];
    a[k] = -s;
  }
  return a;
}

DirichletSeries dirichlet_expand(const std::map<std::uint64_t, InverseFactor>& locals,
                                 std::uint64_t N, std::string conductor) {
  if (N < 1) throw std::invalid_argument("dirichlet_expand: N must be >= 1");
  std::vector<std::uint32_t> spf(N + 1, 0);
  for (std::uint64_t i = 2; i <= N; ++i) {
    if (spf[i] != 0) continue;
    for (std::uint64_t j = i; j <= N; j += i)
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
  }
  unsigned degree = 0;
  for (const auto& [p, f] : locals) {
    if (f.empty() || std::abs(f[0] - Complex(1.0, 0.0)) > 1e-14)
      throw std::invalid_argument("dirichlet_expand: factor at p=" + std::to_string(p) +
                                  " must have constant term 1");
    degree = std::max<unsigned>(degree, static_cast<unsigned>(f.size() - 1));
  }

  std::map<std::uint64_t, std::vector<Complex>> powers;
  for (std::uint64_t p = 2; p <= N; ++p) {
    if (spf[p] != p) continue;
    auto it = locals.find(p);
    if (it == locals.end())
      throw std::invalid_argument("dirichlet_expand: missing local factor at p=" + std::to_string(p));
    unsigned depth = 0;
    for (std::uint64_t pk = p; pk <= N; pk *= p) {
      ++depth;
      if (pk > N / p) break;
    }
    powers.emplace(p, invert_series(it->second, depth));
  }

  std::vector<Complex> coeffs(N + 1, Complex(0.0, 0.0));
  coeffs[1] = 1.0;
  for (std::uint64_t n = 2; n <= N; ++n) {
    const std::uint64_t p = spf[n];
    std::uint64_t m = n;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    coeffs[n] = powers.at(p)[e] * coeffs[m];
  }
  return DirichletSeries(std::move(coeffs), degree, std::move(conductor), locals);
}

double DirichletSeries::multiplicativity_defect(std::uint64_t limit) const {
  limit = std::min(limit, length());
  double worst = 0.0;
  for (std::uint64_t m = 1; m <= limit; ++m)
    for (std::uint64_t n = 1; m * n <= limit; ++n)
      if (std::gcd(m, n) == 1)
        worst = std::max(worst, std::abs(coeffs_[m * n] - coeffs_[m] * coeffs_[n]));
  return worst;
}

LogLAt1 log_L_at_1_via_primes(const DirichletSeries& series, std::uint64_t x) {
  if (x > series.length() + 1)
    throw std::invalid_argument("log_L_at_1_via_primes: cutoff exceeds the series length");
  LogLAt1 out;
  CompensatedSum prime_sum, euler;
  for (const auto& [p, f] : series.local_factors()) {
    if (p < x) prime_sum.add(series(p).real() / static_cast<double>(p));
    if (p > series.length()) continue;
    Complex val = 0.0;
    const double X = 1.0 / static_cast<double>(p);
    for (auto it = f.rbegin(); it != f.rend(); ++it) val = val * X + *it;
    euler.add(-std::log(val).real());
  }
  out.prime_sum = prime_sum.value();
  out.euler_log = euler.value();
  return out;
}

// ---- archimedean ------------------------------------------------------------

ArchParams ArchParams::make(Complex s, int delta) {
  if (delta != 0 && delta != 1) throw std::invalid_argument("ArchParams: delta must be 0 or 1");
  ArchParams a;
  a.delta = delta;
  if (std::abs(s.real()) <= 1e-15) {
    a.s = Complex(0.0, std::abs(s.imag()));
  } else if (std::abs(s.imag()) <= 1e-15 && std::abs(s.real()) <= kKimSarnakExponent + 1e-15) {
    a.s = Complex(std::abs(s.real()), 0.0);
  } else {
    throw std::invalid_argument("ArchParams: s must lie in iR or [-7/64, 7/64]");
  }
  return a;
}

ArchParams ArchParams::tempered(double t, int delta) { return make(Complex(0.0, t), delta); }

ArchParams ArchParams::exceptional(double sigma, int delta) {
  return make(Complex(sigma, 0.0), delta);
}

double ArchTripleResult::ratio_over_bound() const { return std::exp(log_ratio - log_bound); }

ArchTripleResult arch_triple_ratio(const ArchParams& a, const ArchParams& b, const ArchParams& c) {
  if ((a.delta + b.delta + c.delta) % 2 != 0)
    throw std::invalid_argument("arch_triple_ratio: odd parity, the triple factor vanishes");
  const int delta = 0;
  using special::log_gamma_r;
  Complex log_num = 0.0;
  for (double e1 : {1.0, -1.0})
    for (double e2 : {1.0, -1.0})
      for (double e3 : {1.0, -1.0})
        log_num += log_gamma_r(0.5 + e1 * a.s + e2 * b.s + e3 * c.s + static_cast<double>(delta));
  Complex log_den = 0.0;
  for (const ArchParams* x : {&a, &b, &c})
    log_den += log_gamma_r(1.0 + 2.0 * x->s) + log_gamma_r(Complex(1.0, 0.0)) +
               log_gamma_r(1.0 - 2.0 * x->s);

  ArchTripleResult r;
  r.log_ratio = (log_num - log_den).real();
  r.ratio = std::exp(r.log_ratio);

  const double t1 = a.t(), t2 = b.t(), t3 = c.t();
  double abs_sum = 0.0, log_poly = 0.0;
  for (double e1 : {1.0, -1.0})
    for (double e2 : {1.0, -1.0}) {
      const double v = std::abs(t1 + e1 * t2 + e2 * t3);
      abs_sum += v;
      log_poly += -0.5 * std::log(v + 1.0);
    }
  r.log_bound = -0.5 * std::numbers::pi * (abs_sum - 2.0 * (t1 + t2 + t3)) + log_poly;
  r.bound = std::exp(r.log_bound);
  return r;
}

}  // namespace tplab::satake
