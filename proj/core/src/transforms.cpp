#include "tplab/transforms.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "tplab/complex_gamma.hpp"
#include "tplab/kloosterman.hpp"
#include "tplab/parallel.hpp"

namespace tplab::transforms {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

// log cosh(y) for y >= 0 without overflow
double log_cosh(double y) { return y + std::log1p(std::exp(-2.0 * y)) - std::numbers::ln2; }

double log_sinh(double y) { return y + std::log1p(-std::exp(-2.0 * y)) - std::numbers::ln2; }

// 2 Re of the h+ integrand at t > 0
class HPlusIntegrand {
 public:
  HPlusIntegrand(const TestFn& f, double x) : f_(f), L_(std::log(x / 2.0)), q_(-x * x / 4.0) {}

  double operator()(double t) const {
    if (t <= 0.0) return 0.0;
    const cd nu(0.0, 2.0 * t);
    // |Gamma(1+2it)|^2 = 2 pi t / sinh(2 pi t)
    const double log_mod = std::log(2.0 * t) - 0.5 * std::log(2.0 * kPi * t) +
                           0.5 * log_sinh(2.0 * kPi * t) - log_cosh(kPi * t);
    const double phase = 2.0 * t * L_ - special::log_gamma(1.0 + nu).imag();
    cd term = 1.0, series = 1.0;
    for (int j = 1; j < 200; ++j) {
      term *= q_ / (static_cast<double>(j) * (static_cast<double>(j) + nu));
      series += term;
      if (std::abs(term) < 1e-17 * std::abs(series)) break;
    }
    // factor i from 2it
    const cd value = cd(0.0, 1.0) * std::polar(std::exp(log_mod), phase) * series;
    return 2.0 * f_(t) * value.real();
  }

  // local oscillation rate of the integrand in t
  double frequency(double t) const { return std::abs(2.0 * L_ - 2.0 * std::log(1.0 + 2.0 * t)) + 1.0; }

 private:
  TestFn f_;
  double L_;
  double q_;
};

}  // namespace

TestFn::TestFn(double r) : r_(r) {
  if (!(r >= 2.0)) throw std::invalid_argument("TestFn: r must be >= 2");
}

double TestFn::operator()(double t) const { return 1.0 / std::cosh(kPi * t / r_); }

cd TestFn::operator()(cd t) const { return 1.0 / std::cosh(kPi * t / r_); }

TransformResult h0(const TestFn& f) {
  using boost::math::quadrature::gauss_kronrod;
  const double r = f.r();
  const double T = 40.0 * r;
  auto integrand = [&](double t) { return f(t) * t * std::tanh(kPi * t); };
  TransformResult out;
  double err = 0.0;
  // split at a few scales of r so the adaptive rule sees the bulk
  double total = 0.0;
  const double cuts[] = {0.0, 0.5, r, 4.0 * r, 12.0 * r, T};
  for (std::size_t i = 0; i + 1 < std::size(cuts); ++i) {
    double e = 0.0;
    total += gauss_kronrod<double, 61>::integrate(integrand, cuts[i], cuts[i + 1], 15, 1e-15, &e);
    // the reported error is on the rescaled interval [-1, 1]
    err += std::abs(e) * 0.5 * (cuts[i + 1] - cuts[i]);
  }
  const double tail = 2.0 * (r / kPi) * (T + r / kPi) * 2.0 * std::exp(-kPi * T / r);
  out.value = 2.0 / kPi * total;
  out.abs_error_estimate = 2.0 / kPi * (err + tail) + 1e-15 * out.value;
  return out;
}

TransformResult h_plus(const TestFn& f, double x) {
  using boost::math::quadrature::gauss_kronrod;
  if (!(x > 0.0 && x < 2.0)) throw std::invalid_argument("h_plus: x must lie in (0, 2)");
  if (!(f.r() >= 3.0)) throw std::invalid_argument("h_plus: r must be >= 3");
  const HPlusIntegrand g(f, x);
  const double r = f.r();
  const double T = 14.0 * r;
  CompensatedSum total;
  double err = 0.0;
  double a = 0.0;
  while (a < T) {
    const double w = std::min(0.5, kPi / (2.0 * g.frequency(a)));
    const double b = std::min(T, a + w);
    double e = 0.0;
    const double v = gauss_kronrod<double, 15>::integrate(g, a, b, 0, 0.0, &e);
    total.add(v);
    err += e * 0.5 * (b - a);
    a = b;
  }
  // |integrand| <= 16 sqrt(t/pi) e^{-pi t/r} beyond T
  const double tail = 16.0 * std::sqrt(T / kPi) * (r / kPi) * std::exp(-kPi * T / r) *
                      (1.0 + r / (2.0 * kPi * T));
  return {total.value(), err + tail + 1e-16 * std::abs(total.value())};
}

double h_plus_linear(const TestFn& f, double x) { return x / std::cos(kPi / (2.0 * f.r())); }

double weight_W_phi(std::uint64_t p, double lam_p, double lam_p2) {
  const double pd = static_cast<double>(p);
  if (std::abs(lam_p2) > pd)
    throw std::invalid_argument("weight_W_phi: |lambda(p^2)| must not exceed p");
  const double denom = pd * (1.0 - (lam_p2 - 1.0) / pd + 1.0 / (pd * pd));
  return 0.5 * pd * (1.0 + lam_p * lam_p / denom);
}

double weight_W_t(std::uint64_t p, double t) {
  const double pd = static_cast<double>(p);
  const double lp = std::log(pd);
  const double lambda = 2.0 * std::cos(t * lp);
  const double denom = std::norm(1.0 - std::polar(1.0 / pd, 2.0 * t * lp));
  return 0.5 * pd * (1.0 + lambda * lambda / (pd * denom));
}

GeometricSideResult geometric_side(std::uint64_t N, std::uint64_t m, std::uint64_t n,
                                   const TestFn& f, const GeometricOptions& opts) {
  if (N < 1 || m < 1 || n < 1) throw std::invalid_argument("geometric_side: N, m, n must be positive");
  for (const auto& pp : kloosterman::factorize(N))
    if (pp.e > 1) throw std::invalid_argument("geometric_side: N must be square-free");
  if (std::gcd(m * n, N) != 1) throw std::invalid_argument("geometric_side: mn must be coprime to N");
  const double Nd = static_cast<double>(N);
  const double mn = static_cast<double>(m) * static_cast<double>(n);
  if (!(mn < Nd * Nd / (4.0 * kPi * kPi)))
    throw std::invalid_argument("geometric_side: need mn < N^2/(4 pi^2)");
  if (opts.c_max < 1) throw std::invalid_argument("geometric_side: c_max must be >= 1");

  const double r = f.r();
  const double x1 = 4.0 * kPi * std::sqrt(mn) / Nd;
  auto x_of = [&](std::uint64_t c) { return x1 / static_cast<double>(c); };

  GeometricSideResult out;
  const TransformResult diag = h0(f);
  out.h0 = diag.value;
  out.diagonal = (m == n) ? Nd * diag.value : 0.0;
  out.bound = std::sqrt(r) * std::sqrt(mn / Nd);
  out.tail_target = opts.tail_factor * std::sqrt(mn / Nd);

  // remainder constant of the linear term, measured below the threshold
  double K = 0.0;
  for (double s : {1.0, 0.5, 0.25}) {
    const double x = opts.exact_threshold * s;
    const TransformResult hp = h_plus(f, x);
    K = std::max(K, (std::abs(hp.value - h_plus_linear(f, x)) + hp.abs_error_estimate) /
                        (std::sqrt(r) * x * x));
  }
  out.remainder_constant = K;

  const std::uint64_t c_exact_all =
      static_cast<std::uint64_t>(std::floor(x1 / opts.exact_threshold));

  const unsigned threads = resolve_threads(opts.threads);
  constexpr std::uint64_t kChunk = 256;
  struct Partial {
    double sum = 0.0, comp_sum = 0.0, quad = 0.0, lin = 0.0;
  };

  CompensatedSum value_acc;
  double quad_err = 0.0, lin_err = 0.0;
  std::uint64_t done = 0;
  std::uint64_t c_max = opts.c_max;
  const double g = static_cast<double>(std::gcd(m, n));
  const double tauN = static_cast<double>(kloosterman::divisor_count(N));
  auto tail_at = [&](std::uint64_t C) {
    const double Cd = static_cast<double>(C);
    const double series = 2.0 * (std::log(Cd) + 2.0 * std::numbers::egamma + 2.0) / std::sqrt(Cd);
    return tauN * std::sqrt(g) * std::sqrt(Nd) * (x1 / std::cos(kPi / (2.0 * r)) + K * std::sqrt(r) * x1 * x1) *
           series;
  };

  for (;;) {
    const std::uint64_t lo = done + 1;
    const std::uint64_t count = c_max - done;
    const std::uint64_t n_chunks = (count + kChunk - 1) / kChunk;
    std::vector<Partial> parts(n_chunks);
    parallel_for(n_chunks, threads, [&](std::size_t ci) {
      CompensatedSum s;
      double q = 0.0, l = 0.0;
      const std::uint64_t a = lo + ci * kChunk;
      const std::uint64_t b = std::min(c_max, a + kChunk - 1);
      for (std::uint64_t c = a; c <= b; ++c) {
        const double S = kloosterman::kloosterman_factored({m, n, N * c});
        if (S == 0.0) continue;
        const double x = x_of(c);
        const double w = S / static_cast<double>(c);
        if (c <= c_exact_all) {
          const TransformResult hp = h_plus(f, x);
          s.add(w * hp.value);
          q += std::abs(w) * hp.abs_error_estimate;
        } else {
          s.add(w * h_plus_linear(f, x));
          l += std::abs(w) * K * std::sqrt(r) * x * x;
        }
      }
      parts[ci] = {s.value(), 0.0, q, l};
    });
    for (const Partial& p : parts) {
      value_acc.add(p.sum);
      quad_err += p.quad;
      lin_err += p.lin;
    }
    done = c_max;
    out.tail_estimate = tail_at(c_max);
    if (out.tail_estimate <= out.tail_target || c_max * 2 > opts.c_cap) break;
    c_max *= 2;
  }

  out.c_max = c_max;
  out.c_exact = std::min(c_exact_all, c_max);
  out.kloosterman_part = value_acc.value();
  out.value = out.diagonal + out.kloosterman_part;
  out.defect = out.kloosterman_part;
  out.quadrature_error = quad_err + ((m == n) ? Nd * diag.abs_error_estimate : 0.0);
  out.linearization_error = lin_err;
  out.tail_target_met = out.tail_estimate <= out.tail_target;
  out.abs_error_estimate = out.quadrature_error + out.linearization_error + out.tail_estimate;
  return out;
}

}  // namespace tplab::transforms
