#pragma once

#include <complex>
#include <cstdint>

namespace tplab::transforms {

// h(t) = 1 / cosh(pi t / r), r >= 2.
class TestFn {
 public:
  explicit TestFn(double r);
  double r() const { return r_; }
  double operator()(double t) const;
  std::complex<double> operator()(std::complex<double> t) const;

 private:
  double r_;
};

struct TransformResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
};

// (1/pi) int h(t) t tanh(pi t) dt over the real line, truncated at T = 40 r.
TransformResult h0(const TestFn& f);

// int h(t) 2it J_{2it}(x) / cosh(pi t) dt for 0 < x < 2 and r >= 3, with the
// power series of J_{2it}. Throws std::invalid_argument outside that range.
TransformResult h_plus(const TestFn& f, double x);

// Leading small-x behaviour x / cos(pi / 2r).
double h_plus_linear(const TestFn& f, double x);

// (p/2) (1 + lambda(p)^2 / (p (1 - (lambda(p^2) - 1)/p + 1/p^2))).
// Throws std::invalid_argument if |lam_p2| > p.
double weight_W_phi(std::uint64_t p, double lam_p, double lam_p2);

// (p/2) (1 + lambda_t(p)^2 / (p |1 - p^{-1+2it}|^2)), lambda_t(p) = 2 cos(t log p).
double weight_W_t(std::uint64_t p, double t);

struct GeometricOptions {
  std::uint64_t c_max = 100'000;
  // c_max is doubled while the tail estimate exceeds tail_factor * sqrt(mn/N)
  // and the new value stays <= c_cap.
  std::uint64_t c_cap = 100'000;
  double tail_factor = 1e-6;
  // h+ is integrated exactly for x >= exact_threshold, and replaced by its
  // linear term with a measured remainder bound below.
  double exact_threshold = 1e-2;
  unsigned threads = 0;
};

struct GeometricSideResult {
  double value = 0.0;
  double diagonal = 0.0;       // N delta_{m=n} h0
  double kloosterman_part = 0.0;
  double defect = 0.0;         // value - diagonal
  double bound = 0.0;          // sqrt(r) sqrt(mn/N)
  double abs_error_estimate = 0.0;
  double quadrature_error = 0.0;
  double linearization_error = 0.0;
  double tail_estimate = 0.0;
  double tail_target = 0.0;
  bool tail_target_met = false;
  std::uint64_t c_max = 0;
  std::uint64_t c_exact = 0;
  double remainder_constant = 0.0;  // measured K in |h+ - linear| <= K sqrt(r) x^2
  double h0 = 0.0;
};

// N square-free, gcd(mn, N) = 1, mn < N^2 / 4 pi^2; throws std::invalid_argument otherwise.
GeometricSideResult geometric_side(std::uint64_t N, std::uint64_t m, std::uint64_t n,
                                   const TestFn& f, const GeometricOptions& opts = {});

}  // namespace tplab::transforms
