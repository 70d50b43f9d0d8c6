#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace tplab::satake {

using Complex = std::complex<double>;

inline constexpr double kKimSarnakExponent = 7.0 / 64.0;

// Coefficients of prod_k (1 - gamma_k X), ascending in X = p^{-s}; entry 0 is 1.
using InverseFactor = std::vector<Complex>;

InverseFactor polynomial_from_roots(std::span<const Complex> roots);

// Local component of a GL(2) form with trivial central character at p.
class GL2Local {
 public:
  enum class Kind { unramified, special };

  // Throws std::invalid_argument outside |log_p |alpha|| <= 7/64.
  static GL2Local unramified(std::uint64_t p, Complex alpha);
  // Ramanujan case alpha = e^{i theta}.
  static GL2Local tempered(std::uint64_t p, double theta);
  static GL2Local special(std::uint64_t p, int sign);

  Kind kind() const { return kind_; }
  bool is_special() const { return kind_ == Kind::special; }
  std::uint64_t prime() const { return p_; }
  Complex alpha() const { return alpha_; }
  int sign() const { return sign_; }
  // alpha + 1/alpha for unramified data.
  Complex lambda() const;

 private:
  GL2Local(Kind k, std::uint64_t p, Complex a, int s) : kind_(k), p_(p), alpha_(a), sign_(s) {}
  Kind kind_;
  std::uint64_t p_;
  Complex alpha_;
  int sign_;
};

class LocalSatake {
 public:
  LocalSatake() = default;
  explicit LocalSatake(std::vector<Complex> params) : params_(std::move(params)) {}

  const std::vector<Complex>& params() const { return params_; }
  std::size_t size() const { return params_.size(); }
  Complex trace() const;
  Complex product() const;
  InverseFactor inverse_factor() const { return polynomial_from_roots(params_); }
  bool closed_under_inversion(double tol = 1e-12) const;

 private:
  std::vector<Complex> params_;
};

LocalSatake satake_of(const GL2Local& g);
// k in {2, 4}; special input throws std::invalid_argument.
LocalSatake lift_sym(unsigned k, const GL2Local& g);
LocalSatake rankin_selberg(const LocalSatake& a, const LocalSatake& b);
LocalSatake multiset_union(const LocalSatake& a, const LocalSatake& b);

// Greedy matching distance between two multisets; infinity if sizes differ.
double multiset_distance(const LocalSatake& a, const LocalSatake& b);

struct FactorizationCheck {
  bool holds = false;
  double multiset_residual = 0.0;
  double trace_residual = 0.0;
  double residual = 0.0;
};

// sym2 x sym2 = sym4 + sym2 + {1}, and lambda(p^2)^2 = lambda(p^4) + lambda(p^2) + 1.
FactorizationCheck factorization_check(std::uint64_t p, Complex alpha, double tol = 1e-12);

struct TripleFactor {
  std::uint64_t p = 0;
  std::vector<Complex> roots;
  InverseFactor coefficients;
};

// Inverse local factor of L(s, pi1 x pi2 x pi3) at p in the four ramification
// cases. Throws std::invalid_argument if the primes differ.
TripleFactor triple_local_factor(const GL2Local& a, const GL2Local& b, const GL2Local& c);

// Inverse factor of the adjoint square at p.
InverseFactor sym2_local_factor(const GL2Local& g);

class DirichletSeries {
 public:
  DirichletSeries() = default;
  DirichletSeries(std::vector<Complex> coeffs, unsigned degree, std::string conductor,
                  std::map<std::uint64_t, InverseFactor> locals)
      : coeffs_(std::move(coeffs)), degree_(degree), conductor_(std::move(conductor)),
        locals_(std::move(locals)) {}

  std::uint64_t length() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  // lambda(n) for 1 <= n <= length().
  Complex operator()(std::uint64_t n) const { return coeffs_.at(n); }
  unsigned degree() const { return degree_; }
  const std::string& conductor() const { return conductor_; }
  const std::map<std::uint64_t, InverseFactor>& local_factors() const { return locals_; }

  // Largest |lambda(mn) - lambda(m) lambda(n)| over coprime m, n with mn <= limit.
  double multiplicativity_defect(std::uint64_t limit) const;

 private:
  std::vector<Complex> coeffs_;
  unsigned degree_ = 0;
  std::string conductor_;
  std::map<std::uint64_t, InverseFactor> locals_;
};

// Power-series inversion of every local factor to depth floor(log_p N) and
// multiplicative assembly. Throws std::invalid_argument if a prime <= N is
// missing or a factor has constant term different from 1.
DirichletSeries dirichlet_expand(const std::map<std::uint64_t, InverseFactor>& locals,
                                 std::uint64_t N, std::string conductor = "1");

// Coefficients of 1/P(X) up to X^depth.
std::vector<Complex> invert_series(const InverseFactor& poly, unsigned depth);

struct LogLAt1 {
  double prime_sum = 0.0;  // sum_{p < x} Re lambda(p)/p
  double euler_log = 0.0;  // sum_p -Re log P_p(1/p) over all stored primes
  double difference() const { return prime_sum - euler_log; }
};

LogLAt1 log_L_at_1_via_primes(const DirichletSeries& series, std::uint64_t x);

// Archimedean principal-series data P(s, delta).
struct ArchParams {
  Complex s;
  int delta = 0;

  // s = i t (tempered); t is normalized to t >= 0.
  static ArchParams tempered(double t, int delta = 0);
  // s real with |s| <= 7/64; normalized to s >= 0.
  static ArchParams exceptional(double sigma, int delta = 0);
  // Validates and normalizes an arbitrary s.
  static ArchParams make(Complex s, int delta = 0);
  double t() const { return s.imag(); }
};

struct ArchTripleResult {
  double ratio = 0.0;        // L_inf(1/2, triple) / prod L_inf(1, sym2)
  double log_ratio = 0.0;
  double bound = 0.0;        // Stirling-type bounding expression
  double log_bound = 0.0;
  double ratio_over_bound() const;
};

// Throws std::invalid_argument when the parity sum is odd.
ArchTripleResult arch_triple_ratio(const ArchParams& a, const ArchParams& b, const ArchParams& c);

}  // namespace tplab::satake
