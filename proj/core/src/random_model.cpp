#include "tplab/random_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "tplab/hecke.hpp"
#include "tplab/parallel.hpp"
#include "tplab/satake.hpp"

namespace tplab::model {

std::string to_string(WeightMode m) { return m == WeightMode::plain ? "plain" : "smoothed"; }

WeightMode weight_mode_from_string(const std::string& s) {
  if (s == "plain") return WeightMode::plain;
  if (s == "smoothed") return WeightMode::smoothed;
  throw std::invalid_argument("unknown weight mode '" + s + "' (plain|smoothed)");
}

void ModelConfig::validate() const {
  if (x < 2) throw std::invalid_argument("ModelConfig: x must be >= 2");
  if (samples < 1) throw std::invalid_argument("ModelConfig: samples must be >= 1");
  if (x > primes::kMaxSieveLimit) throw std::invalid_argument("ModelConfig: x exceeds the sieve limit");
}

// ---- forms -------------------------------------------------------------------

FormModel::FormModel(std::vector<std::uint64_t> primes, std::vector<double> lambdas)
    : primes_(std::move(primes)), lambdas_(std::move(lambdas)) {
  if (primes_.size() != lambdas_.size())
    throw std::invalid_argument("FormModel: primes and eigenvalues differ in length");
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    const double cap = 2.0 * std::pow(static_cast<double>(primes_[i]), satake::kKimSarnakExponent);
    if (std::abs(lambdas_[i]) > cap)
      throw std::invalid_argument("FormModel: eigenvalue outside the Kim-Sarnak range");
  }
}

FormModel FormModel::sato_tate(const primes::PrimeTable& table, std::uint64_t seed, std::uint64_t form_id) {
  rng::CounterStream stream(seed, (std::uint64_t{1} << 63) | form_id);
  std::vector<double> lambdas;
  lambdas.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) lambdas.push_back(sample_sato_tate(stream));
  return FormModel(std::vector<std::uint64_t>(table.begin(), table.end()), std::move(lambdas));
}

double FormModel::lambda(std::uint64_t p) const {
  auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  if (it == primes_.end() || *it != p) throw std::out_of_range("FormModel: prime not covered");
  return lambdas_[static_cast<std::size_t>(it - primes_.begin())];
}

double FormModel::lambda_power(std::size_t i, unsigned k) const {
  const double l = lambdas_.at(i);
  double prev = 1.0, cur = l;
  if (k == 0) return 1.0;
  for (unsigned j = 1; j < k; ++j) {
    const double next = l * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double smoothing_factor(std::uint64_t p, std::uint64_t x, WeightMode mode) {
  if (mode == WeightMode::plain) return 1.0;
  const double lx = std::log(static_cast<double>(x));
  const double lp = std::log(static_cast<double>(p));
  return std::exp(-lp / lx) * (lx - lp) / lx;
}

std::vector<double> coefficient_b(const FormModel& F, const FormModel& f1, const FormModel& f2) {
  if (F.size() != f1.size() || F.size() != f2.size())
    throw std::invalid_argument("coefficient_b: forms cover different prime ranges");
  std::vector<double> b(F.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double lF = F.lambdas()[i];
    b[i] = lF * lF + f1.lambdas()[i] * f2.lambdas()[i];
  }
  return b;
}

double model_log_L(std::span<const std::uint64_t> primes, std::span<const double> b,
                   std::span<const double> phi, std::uint64_t x, WeightMode mode) {
  if (b.size() < primes.size() || phi.size() < primes.size())
    throw std::invalid_argument("model_log_L: coefficients do not cover all primes");
  CompensatedSum acc;
  for (std::size_t i = 0; i < primes.size() && primes[i] <= x; ++i) {
    const double p = static_cast<double>(primes[i]);
    acc.add(b[i] * smoothing_factor(primes[i], x, mode) * phi[i] / std::sqrt(p));
  }
  return acc.value();
}

// ---- mean / variance -----------------------------------------------------------

namespace {

// sum_{p < x} lambda_{sym^k f}(p)/p through the Dirichlet series of the lift
double lift_prime_sum(const FormModel& f, unsigned k, std::uint64_t x) {
  std::map<std::uint64_t, satake::InverseFactor> locals;
  for (std::size_t i = 0; i < f.size() && f.primes()[i] <= x; ++i) {
    const double l = std::clamp(f.lambdas()[i] / 2.0, -1.0, 1.0);
    const auto g = satake::GL2Local::tempered(f.primes()[i], std::acos(l));
    locals.emplace(f.primes()[i], satake::lift_sym(k, g).inverse_factor());
  }
  const satake::DirichletSeries series = satake::dirichlet_expand(locals, x, "1");
  return satake::log_L_at_1_via_primes(series, x + 1).prime_sum;
}

}  // namespace

MeanVariance predicted_mean_variance(const ModelConfig& cfg, const FormModel& F, const FormModel& f1,
                                     const FormModel& f2) {
  cfg.validate();
  MeanVariance mv;
  mv.loglog_x = std::log(std::log(static_cast<double>(cfg.x)));
  mv.mu_leading = (cfg.equal_forms ? -2.0 : -1.5) * mv.loglog_x;
  mv.var_leading = (cfg.equal_forms ? 6.0 : 3.0) * mv.loglog_x;

  double log_ratio = lift_prime_sum(F, 4, cfg.x) - lift_prime_sum(F, 2, cfg.x);
  if (cfg.equal_forms) log_ratio += lift_prime_sum(f1, 4, cfg.x) - lift_prime_sum(f1, 2, cfg.x);
  mv.mu_correction = -0.5 * log_ratio;
  mv.mu_refined = mv.mu_leading + mv.mu_correction;

  const std::vector<double> b = coefficient_b(F, f1, f2);
  CompensatedSum var;
  for (std::size_t i = 0; i < b.size() && F.primes()[i] <= cfg.x; ++i) {
    const double s = smoothing_factor(F.primes()[i], cfg.x, cfg.weight_mode);
    var.add(b[i] * b[i] * s * s / static_cast<double>(F.primes()[i]));
  }
  mv.var_empirical = var.value();
  mv.var_correction = mv.var_empirical - mv.var_leading;
  return mv;
}

ModelSetup custom_setup(const ModelConfig& cfg, std::span<const std::uint64_t> primes, std::span<const double> b) {
  cfg.validate();
  if (b.size() != primes.size()) throw std::invalid_argument("custom_setup: size mismatch");
  ModelSetup s;
  CompensatedSum var;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (primes[i] > cfg.x) break;
    const double w = b[i] * smoothing_factor(primes[i], cfg.x, cfg.weight_mode) /
                     std::sqrt(static_cast<double>(primes[i]));
    s.primes.push_back(primes[i]);
    s.b.push_back(b[i]);
    s.weights.push_back(w);
    var.add(w * w);
  }
  s.sigma2 = var.value();
  s.mean_variance.var_empirical = s.sigma2;
  s.description = "custom";
  return s;
}

ModelSetup build_setup(const ModelConfig& cfg) {
  cfg.validate();
  const primes::PrimeTable table = primes::primes_up_to(cfg.x);
  const FormModel F = FormModel::sato_tate(table, cfg.seed, 0);
  const FormModel f1 = FormModel::sato_tate(table, cfg.seed, 1);
  const FormModel f2 = cfg.equal_forms ? f1 : FormModel::sato_tate(table, cfg.seed, 2);
  const std::vector<double> b = coefficient_b(F, f1, f2);
  ModelSetup s = custom_setup(cfg, F.primes(), b);
  s.mean_variance = predicted_mean_variance(cfg, F, f1, f2);
  s.mu = s.mean_variance.mu_leading;
  s.description = cfg.equal_forms ? "sato-tate frozen forms, f1 = f2" : "sato-tate frozen forms, f1 != f2";
  return s;
}

// ---- statistics ---------------------------------------------------------------------

std::vector<double> exact_even_moments(std::span<const double> weights, unsigned k_max) {
  const unsigned n_max = 2 * k_max;
  // semicircle moments and cumulants
  std::vector<double> m(n_max + 1, 0.0), kappa(n_max + 1, 0.0);
  std::vector<std::vector<double>> binom(n_max + 1, std::vector<double>(n_max + 1, 0.0));
  for (unsigned n = 0; n <= n_max; ++n) {
    binom[n][0] = 1.0;
    for (unsigned j = 1; j <= n; ++j) binom[n][j] = binom[n - 1][j - 1] + (j <= n - 1 ? binom[n - 1][j] : 0.0);
  }
  for (unsigned n = 0; n <= n_max; n += 2) m[n] = hecke::catalan_coefficient(n).get_d();
  for (unsigned n = 1; n <= n_max; ++n) {
    double s = m[n];
    for (unsigned j = 1; j < n; ++j) s -= binom[n - 1][j - 1] * kappa[j] * m[n - j];
    kappa[n] = s;
  }
  std::vector<double> K(n_max + 1, 0.0);
  for (unsigned n = 2; n <= n_max; n += 2) {
    CompensatedSum acc;
    for (double w : weights) acc.add(std::pow(w, static_cast<int>(n)));
    K[n] = kappa[n] * acc.value();
  }
  std::vector<double> M(n_max + 1, 0.0);
  M[0] = 1.0;
  for (unsigned n = 1; n <= n_max; ++n) {
    double s = 0.0;
    for (unsigned j = 1; j <= n; ++j) s += binom[n - 1][j - 1] * K[j] * M[n - j];
    M[n] = s;
  }
  std::vector<double> out;
  for (unsigned k = 0; k <= k_max; ++k) out.push_back(M[2 * k]);
  return out;
}

double ks_to_normal(std::vector<double> samples, double sigma) {
  if (samples.empty()) return 0.0;
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double F = 0.5 * std::erfc(-samples[i] / (sigma * std::numbers::sqrt2));
    d = std::max({d, static_cast<double>(i + 1) / n - F, F - static_cast<double>(i) / n});
  }
  return d;
}

namespace {

Estimate mean_and_se(const std::vector<double>& y) {
  CompensatedSum s;
  for (double v : y) s.add(v);
  const double n = static_cast<double>(y.size());
  const double mean = s.value() / n;
  CompensatedSum q;
  for (double v : y) q.add((v - mean) * (v - mean));
  const double var = y.size() > 1 ? q.value() / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

double double_factorial_ratio(unsigned k) {
  // (2k)! / (2^k k!) = (2k-1)!!
  double r = 1.0;
  for (unsigned j = 1; j <= k; ++j) r *= static_cast<double>(2 * j - 1);
  return r;
}

}  // namespace

SimulationReport simulate(const ModelSetup& setup, const ModelConfig& cfg, const SimulationOptions& opts) {
  cfg.validate();
  if (!(opts.exponent > 0.0 && opts.exponent <= 1.0))
    throw std::invalid_argument("simulate: exponent must lie in (0, 1]");
  if (opts.k_max < 1 || opts.k_max > 6) throw std::invalid_argument("simulate: k_max must lie in [1, 6]");

  const std::size_t P = setup.weights.size();
  const double* w = setup.weights.data();
  const std::uint64_t n = cfg.samples;
  std::vector<double> S(n);
  constexpr std::uint64_t kChunk = 2048;
  const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
  parallel_for(chunks, cfg.threads, [&](std::size_t c) {
    const std::uint64_t lo = c * kChunk, hi = std::min(n, lo + kChunk);
    for (std::uint64_t s = lo; s < hi; ++s) {
      rng::CounterStream stream(cfg.seed, s);
      double acc = 0.0;
      for (std::size_t i = 0; i < P; ++i) acc += w[i] * sample_sato_tate(stream);
      S[s] = acc;
    }
  });

  SimulationReport r;
  r.samples = n;
  r.n_primes = P;
  r.mu = setup.mu;
  r.sigma2 = setup.sigma2;
  r.mean_variance = setup.mean_variance;
  r.mean = mean_and_se(S);
  {
    std::vector<double> sq(n);
    for (std::uint64_t i = 0; i < n; ++i) sq[i] = (S[i] - r.mean.value) * (S[i] - r.mean.value);
    const Estimate e = mean_and_se(sq);
    const double corr = n > 1 ? static_cast<double>(n) / static_cast<double>(n - 1) : 1.0;
    r.variance = {e.value * corr, e.standard_error * corr};
  }

  const std::vector<double> exact = exact_even_moments(setup.weights, opts.k_max);
  std::vector<double> y(n);
  for (unsigned k = 1; k <= opts.k_max; ++k) {
    for (std::uint64_t i = 0; i < n; ++i) y[i] = std::pow(S[i], static_cast<int>(2 * k));
    MomentStat m;
    m.k = k;
    m.empirical = mean_and_se(y);
    m.gaussian = double_factorial_ratio(k) * std::pow(setup.sigma2, static_cast<int>(k));
    m.exact_model = exact[k];
    m.ratio = m.empirical.value / m.gaussian;
    m.ratio_se = m.empirical.standard_error / m.gaussian;
    r.moments.push_back(m);
  }

  const double t = opts.exponent;
  r.exponent = t;
  for (std::uint64_t i = 0; i < n; ++i) y[i] = std::exp(t * (setup.mu + S[i]));
  r.frac_moment = mean_and_se(y);
  r.frac_lognormal = std::exp(t * setup.mu + 0.5 * t * t * setup.sigma2);
  double log_exact = t * setup.mu;
  for (double wi : setup.weights) {
    const double a = t * std::abs(wi);
    if (a > 0.0) log_exact += std::log(std::cyl_bessel_i(1.0, 2.0 * a) / a);
  }
  r.frac_exact_model = std::exp(log_exact);
  r.frac_ratio = r.frac_moment.value / r.frac_lognormal;
  r.frac_z = r.frac_moment.standard_error > 0.0
                 ? (r.frac_moment.value - r.frac_lognormal) / r.frac_moment.standard_error
                 : 0.0;

  r.ks_distance = ks_to_normal(S, std::sqrt(setup.sigma2));
  if (opts.keep_raw) r.raw = std::move(S);
  return r;
}

SimulationReport simulate(const ModelConfig& cfg, const SimulationOptions& opts) {
  return simulate(build_setup(cfg), cfg, opts);
}

SimulationReport mc_fractional_moment(const ModelConfig& cfg, double exponent) {
  SimulationOptions o;
  o.exponent = exponent;
  return simulate(cfg, o);
}

MomentStat mc_high_moment(const ModelConfig& cfg, unsigned k) {
  if (k < 1 || k > 6) throw std::invalid_argument("mc_high_moment: k must lie in [1, 6]");
  SimulationOptions o;
  o.k_max = k;
  return simulate(cfg, o).moments.back();
}

double clt_distance(const ModelConfig& cfg) { return simulate(cfg).ks_distance; }

double coefficient_lhs(double delta, double lF, double l1, double l2) {
  const double u = lF * lF, v = l1 * l2;
  return delta * (u + v) * (u + v) - 3.0 * delta - u * u + 4.0 * u - 2.0;
}

double completed_square_bound(double delta, double lF, double l1, double l2) {
  (void)lF;
  const double v = l1 * l2;
  return (delta * v + 2.0) * (delta * v + 2.0) / (1.0 - delta) + delta * v * v;
}

}  // namespace tplab::model
