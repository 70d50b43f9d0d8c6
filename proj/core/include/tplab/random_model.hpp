#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tplab/philox.hpp"
#include "tplab/primes.hpp"

namespace tplab::model {

enum class WeightMode { plain, smoothed };

std::string to_string(WeightMode m);
WeightMode weight_mode_from_string(const std::string& s);

struct ModelConfig {
  std::uint64_t x = 100'000;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 7;
  bool equal_forms = false;
  WeightMode weight_mode = WeightMode::plain;
  unsigned threads = 0;

  void validate() const;  // throws std::invalid_argument
};

// Semicircle variate on [-2, 2]: 2u for (u, v) uniform in the unit disc.
inline double sample_sato_tate(rng::CounterStream& s) {
  for (;;) {
    const double u = s.next_signed();
    const double v = s.next_signed();
    if (u * u + v * v <= 1.0) return 2.0 * u;
  }
}

// Frozen Hecke eigenvalues lambda(p) of one form, aligned with a prime list.
class FormModel {
 public:
  FormModel() = default;
  FormModel(std::vector<std::uint64_t> primes, std::vector<double> lambdas);

  // Sato-Tate draw on substream (2^63 | form_id) of `seed`.
  static FormModel sato_tate(const primes::PrimeTable& table, std::uint64_t seed, std::uint64_t form_id);

  std::size_t size() const { return primes_.size(); }
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  const std::vector<double>& lambdas() const { return lambdas_; }
  double lambda(std::uint64_t p) const;  // throws std::out_of_range

  // lambda(p^k) = U_k(lambda(p)/2)
  double lambda_power(std::size_t i, unsigned k) const;

 private:
  std::vector<std::uint64_t> primes_;
  std::vector<double> lambdas_;
};

// p^{-1/log x} log(x/p) / log x for smoothed, 1 for plain.
double smoothing_factor(std::uint64_t p, std::uint64_t x, WeightMode mode);

// b(p) = lambda_F(p)^2 + lambda_f1(p) lambda_f2(p).
std::vector<double> coefficient_b(const FormModel& F, const FormModel& f1, const FormModel& f2);

// sum_{p <= x} b(p) s(p) phi(p) / sqrt(p) with s the smoothing factor.
double model_log_L(std::span<const std::uint64_t> primes, std::span<const double> b,
                   std::span<const double> phi, std::uint64_t x, WeightMode mode = WeightMode::plain);

struct MeanVariance {
  double loglog_x = 0.0;
  double mu_leading = 0.0;
  double var_leading = 0.0;
  double mu_correction = 0.0;  // -1/2 log of the s = 1 ratio via prime sums
  double mu_refined = 0.0;
  double var_empirical = 0.0;  // sum b(p)^2 s(p)^2 / p
  double var_correction = 0.0;
};

MeanVariance predicted_mean_variance(const ModelConfig& cfg, const FormModel& F, const FormModel& f1,
                                     const FormModel& f2);

// Everything one Monte Carlo run needs: primes, coefficients and weights.
struct ModelSetup {
  std::vector<std::uint64_t> primes;
  std::vector<double> b;
  std::vector<double> weights;  // b(p) s(p) / sqrt(p)
  double mu = 0.0;
  double sigma2 = 0.0;          // sum of weights^2
  MeanVariance mean_variance;
  std::string description;
};

ModelSetup build_setup(const ModelConfig& cfg);
// b supplied by the caller, mu = 0.
ModelSetup custom_setup(const ModelConfig& cfg, std::span<const std::uint64_t> primes, std::span<const double> b);

struct Estimate {
  double value = 0.0;
  double standard_error = 0.0;
};

struct MomentStat {
  unsigned k = 0;                // moment of order 2k
  Estimate empirical;
  double gaussian = 0.0;         // (2k)!/(2^k k!) sigma^{2k}
  double exact_model = 0.0;      // from the cumulants of the weighted semicircles
  double ratio = 0.0;            // empirical / gaussian
  double ratio_se = 0.0;
};

struct SimulationReport {
  std::uint64_t samples = 0;
  std::size_t n_primes = 0;
  double mu = 0.0;
  double sigma2 = 0.0;
  MeanVariance mean_variance;
  Estimate mean;       // of S = sum w_p lambda_phi(p)
  Estimate variance;
  std::vector<MomentStat> moments;
  double exponent = 0.5;
  Estimate frac_moment;             // E[e^{t X}], X = mu + S
  double frac_lognormal = 0.0;      // e^{t mu + t^2 sigma^2 / 2}
  double frac_exact_model = 0.0;    // e^{t mu} prod_p I_1(2 t w_p)/(t w_p)
  double frac_ratio = 0.0;          // empirical / lognormal
  double frac_z = 0.0;              // (empirical - lognormal) / se
  double ks_distance = 0.0;
  std::vector<double> raw;          // S per sample, kept only on request
};

struct SimulationOptions {
  double exponent = 0.5;
  unsigned k_max = 4;
  bool keep_raw = false;
};

SimulationReport simulate(const ModelSetup& setup, const ModelConfig& cfg, const SimulationOptions& opts = {});
SimulationReport simulate(const ModelConfig& cfg, const SimulationOptions& opts = {});

SimulationReport mc_fractional_moment(const ModelConfig& cfg, double exponent);
// k <= 6; throws std::invalid_argument otherwise.
MomentStat mc_high_moment(const ModelConfig& cfg, unsigned k);
double clt_distance(const ModelConfig& cfg);

// Kolmogorov-Smirnov distance of the samples / sigma to N(0, 1). Sorts a copy.
double ks_to_normal(std::vector<double> samples, double sigma);

// Moments E[(sum w_p lambda_p)^{2k}], k = 0..k_max, for independent semicircle lambda_p.
std::vector<double> exact_even_moments(std::span<const double> weights, unsigned k_max);

// Pointwise p-coefficient inequality: lhs(delta) <= completed-square bound.
double coefficient_lhs(double delta, double lF, double l1, double l2);
double completed_square_bound(double delta, double lF, double l1, double l2);

}  // namespace tplab::model
