#include "tplab/pipeline.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "tplab/hecke.hpp"
#include "tplab/parallel.hpp"
#include "tplab/primes.hpp"

namespace tplab::pipeline {

namespace {

constexpr unsigned kMaxN = 5;

struct PowerSumTable {
  std::array<std::array<long, kMaxN + 1>, kMaxN + 1> c{};  // c[n][m]
};

const PowerSumTable& power_sum_table() {
  static const PowerSumTable table = [] {
    PowerSumTable t;
    for (unsigned n = 1; n <= kMaxN; ++n) {
      const auto e = hecke::power_sum_in_lambda(n);
      for (unsigned m = 0; m <= kMaxN; ++m) t.c[n][m] = e.coefficient(m).get_si();
    }
    return t;
  }();
  return table;
}

double weight(double p_n, double n, double log_p, double log_x) {
  // p^{-n/2 - n/log x} log(x/p^n)/log x
  const double exponent = -(n / 2.0 + n / log_x) * log_p;
  return std::exp(exponent) * (log_x - std::log(p_n)) / log_x;
}

template <class F>
double integrate_log_space(F&& log_integrand, double a, double b) {
  // returns log int_a^b exp(log_integrand(V)) dV
  using boost::math::quadrature::gauss_kronrod;
  if (!(b > a)) return -std::numeric_limits<double>::infinity();
  constexpr int kPanels = 24;
  double shift = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 8 * kPanels; ++i) {
    shift = std::max(shift, log_integrand(a + (b - a) * i / (8.0 * kPanels)));
  }
  // panels graded toward the left end when it is positive
  std::vector<double> nodes(kPanels + 1);
  const bool geometric = a > 0.0;
  for (int i = 0; i <= kPanels; ++i) {
    const double t = static_cast<double>(i) / kPanels;
    nodes[i] = geometric ? a * std::pow(b / a, t) : a + (b - a) * t;
  }
  nodes.back() = b;
  CompensatedSum total;
  for (int i = 0; i < kPanels; ++i) {
    double err = 0.0;
    total.add(gauss_kronrod<double, 61>::integrate(
        [&](double v) { return std::exp(log_integrand(v) - shift); }, nodes[i], nodes[i + 1], 10,
        1e-13, &err));
  }
  return shift + std::log(total.value());
}

}  // namespace

PrimeCoefficients coefficients_from_lambda(std::uint64_t p, double l1, double l2, double l3) {
  PrimeCoefficients out;
  out.p = p;
  const std::array<double, 3> l{l1, l2, l3};
  for (int i = 0; i < 3; ++i) {
    auto& row = out.lambda[i];
    row[0] = 1.0;
    row[1] = l[i];
    for (int m = 2; m < 6; ++m) row[m] = l[i] * row[m - 1] - row[m - 2];
  }
  return out;
}

long power_sum_coefficient(unsigned m, unsigned n) {
  if (n == 0 || n > kMaxN || m > kMaxN) throw std::invalid_argument("power_sum_coefficient: need 1 <= n <= 5, m <= 5");
  return power_sum_table().c[n][m];
}

ChandeeTerms chandee_rhs(const std::vector<PrimeCoefficients>& data, double x,
                         const std::set<std::uint64_t>& excluded, double log_conductor) {
  if (!(x >= 2.0)) throw std::invalid_argument("chandee_rhs: x must be >= 2");
  const double log_x = std::log(x);
  std::map<std::uint64_t, const PrimeCoefficients*> by_prime;
  for (const auto& d : data) by_prime[d.p] = &d;

  const auto& table = power_sum_table();
  ChandeeTerms out;
  const auto ps = primes::primes_up_to(static_cast<std::uint64_t>(std::floor(x)));
  std::array<CompensatedSum, kMaxN + 1> sums;
  for (const auto p : ps) {
    if (excluded.count(p)) continue;
    const auto it = by_prime.find(p);
    if (it == by_prime.end()) throw std::invalid_argument("chandee_rhs: missing coefficients at p = " + std::to_string(p));
    const auto& lam = it->second->lambda;
    const double log_p = std::log(static_cast<double>(p));
    sums[1].add(lam[0][1] * lam[1][1] * lam[2][1] * weight(static_cast<double>(p), 1.0, log_p, log_x));
    double p_n = static_cast<double>(p);
    for (unsigned n = 2; n <= kMaxN; ++n) {
      p_n *= static_cast<double>(p);
      if (p_n > x) break;
      double third = 0.0;
      for (unsigned m = 1; m <= n; ++m) third += table.c[n][m] * lam[2][m];
      double prod = third;
      for (int i = 0; i < 2; ++i) {
        double f = 0.0;
        for (unsigned m = 0; m <= n; ++m) f += table.c[n][m] * lam[i][m];
        prod *= f;
      }
      sums[n].add(prod * weight(p_n, n, log_p, log_x) / n);
    }
  }
  for (unsigned n = 1; n <= kMaxN; ++n) out.s[n] = sums[n].value();
  out.conductor_term = 10.0 * log_conductor / log_x;
  out.total = out.conductor_term;
  for (unsigned n = 1; n <= kMaxN; ++n) out.total += out.s[n];
  return out;
}

double higher_order_bound(double x, const std::set<std::uint64_t>& excluded) {
  if (!(x >= 2.0)) throw std::invalid_argument("higher_order_bound: x must be >= 2");
  const double log_x = std::log(x);
  const auto& table = power_sum_table();
  const auto ps = primes::primes_up_to(static_cast<std::uint64_t>(std::floor(std::sqrt(x))) + 2);
  CompensatedSum total;
  for (const auto p : ps) {
    if (excluded.count(p)) continue;
    const double log_p = std::log(static_cast<double>(p));
    double p_n = static_cast<double>(p);
    for (unsigned n = 2; n <= kMaxN; ++n) {
      p_n *= static_cast<double>(p);
      if (p_n > x) break;
      const double c0 = std::abs(static_cast<double>(table.c[n][0]));
      total.add(4.0 * (2.0 + c0) * weight(p_n, n, log_p, log_x) / n);
    }
  }
  return total.value();
}

Targets mean_variance_targets(bool equal_forms) {
  Targets t;
  t.mu_coefficient = equal_forms ? mpq_class(-2) : mpq_class(-3, 2);
  t.var_coefficient = equal_forms ? mpq_class(6) : mpq_class(3);
  t.exponent = t.mu_coefficient / 2 + t.var_coefficient / 8;
  t.exponent.canonicalize();
  return t;
}

BoundConfig BoundConfig::from_q(double q, double epsilon, bool equal_forms) {
  if (!(q > 1.0)) throw std::invalid_argument("BoundConfig: q must exceed 1");
  BoundConfig c;
  c.log_q = std::log(q);
  c.epsilon = epsilon;
  c.equal_forms = equal_forms;
  return c;
}

void BoundConfig::validate() const {
  if (!(log_q >= std::log(16.0))) throw std::invalid_argument("BoundConfig: q must be >= 16");
  if (!(epsilon > 0.0 && epsilon < 0.01)) throw std::invalid_argument("BoundConfig: epsilon must lie in (0, 1/100)");
  if (!(A > 0.0) || !(C > 0.0) || !(B > 0.0) || !(c_eps_factor > 0.0))
    throw std::invalid_argument("BoundConfig: A, C, B, c(eps) must be positive");
  if (!(Delta() > 0.0)) throw std::invalid_argument("BoundConfig: logloglog q must be positive");
}

double BoundConfig::loglog_q() const { return std::log(log_q); }
double BoundConfig::Delta() const { return std::log(loglog_q()); }

double BoundConfig::mu_q() const {
  const auto t = mean_variance_targets(equal_forms);
  return t.mu_coefficient.get_d() * loglog_q() + mu_correction;
}

double BoundConfig::var_q() const {
  const auto t = mean_variance_targets(equal_forms);
  return t.var_coefficient.get_d() * loglog_q() + var_correction;
}

double BoundConfig::V_small() const { return var_q() / Delta(); }
double BoundConfig::V_bulk() const { return Delta() * var_q(); }
double BoundConfig::V_max() const { return A * log_q / loglog_q(); }

std::string range_name(Range r) {
  switch (r) {
    case Range::small: return "small";
    case Range::bulk_low: return "bulk_p<z";
    case Range::bulk_high: return "bulk_z≤p<x";
    case Range::large: return "large";
    case Range::higher_order: return "higher_order";
    case Range::tail: return "tail";
  }
  return "?";
}

Range range_from_string(const std::string& s) {
  for (auto r : {Range::small, Range::bulk_low, Range::bulk_high, Range::large, Range::higher_order, Range::tail}) {
    if (s == range_name(r)) return r;
  }
  if (s == "bulk_low") return Range::bulk_low;
  if (s == "bulk_high") return Range::bulk_high;
  throw std::invalid_argument("unknown range: " + s);
}

RangeInterval range_interval(const BoundConfig& cfg, Range r) {
  const double lo = cfg.V_small();
  const double hi = cfg.V_max();
  const double mid = std::min(std::max(lo, cfg.V_bulk()), hi);
  switch (r) {
    case Range::small: return {-std::numeric_limits<double>::infinity(), lo};
    case Range::bulk_low:
    case Range::bulk_high: return {lo, mid};
    case Range::large: return {mid, hi};
    case Range::higher_order:
    case Range::tail: return {lo, hi};
  }
  return {};
}

bool XZK::admissible() const {
  if (range == Range::bulk_low) return flag_k_log_z && flag_x_large;
  return flag_k_log_x && flag_x_large;
}

XZK choose_x_z_k(double V, const BoundConfig& cfg, Range r) {
  cfg.validate();
  if (r == Range::small || r == Range::tail)
    throw std::invalid_argument("choose_x_z_k: no moment choice in range " + range_name(r));
  const auto iv = range_interval(cfg, r);
  if (iv.empty() || !(V > iv.lo && V <= iv.hi))
    throw std::invalid_argument("choose_x_z_k: V outside the " + range_name(r) + " range");
  const double eps = cfg.epsilon;
  const double Delta = cfg.Delta();
  XZK out;
  out.range = r;
  out.V = V;
  out.log_x = 9.0 * cfg.A * cfg.log_q / (eps * V);
  out.log_z = out.log_x / (Delta * Delta);
  double k = 0.0;
  if (r == Range::bulk_low) {
    const double s = 1.0 - (cfg.C + 1.0) * eps;
    k = std::floor(s * s / (1.0 + eps) * V * V / (2.0 * cfg.var_q()));
  } else {
    k = std::floor(eps * V / (900.0 * cfg.A));
  }
  out.k = static_cast<std::uint64_t>(std::max(0.0, k));
  out.k_log_z = k * out.log_z;
  out.k_log_x = k * out.log_x;
  out.flag_k_log_z = out.k_log_z < cfg.log_q / 2.0;
  out.flag_k_log_x = out.k_log_x <= cfg.log_q / 100.0;
  out.flag_x_large = out.log_x >= (9.0 / eps) * cfg.loglog_q() * (1.0 - 1e-12);
  return out;
}

double gaussian_integral(double alpha, double beta) {
  if (!(alpha > 0.0)) throw std::invalid_argument("gaussian_integral: alpha must be positive");
  return std::exp(beta * beta / (4.0 * alpha)) * std::sqrt(std::numbers::pi / alpha);
}

GaussianIntegral gaussian_integral_checked(double alpha, double beta) {
  using boost::math::quadrature::gauss_kronrod;
  GaussianIntegral out;
  out.closed_form = gaussian_integral(alpha, beta);
  const double c = beta / (2.0 * alpha);
  const double s = 1.0 / std::sqrt(alpha);
  const double peak = beta * beta / (4.0 * alpha);
  CompensatedSum total;
  constexpr int kPanels = 16;
  for (int i = 0; i < kPanels; ++i) {
    const double a = c - 10.0 * s + 20.0 * s * i / kPanels;
    const double b = c - 10.0 * s + 20.0 * s * (i + 1) / kPanels;
    total.add(gauss_kronrod<double, 61>::integrate(
        [&](double x) { return std::exp(-alpha * x * x + beta * x - peak); }, a, b, 10, 1e-15));
  }
  out.quadrature = total.value() * std::exp(peak);
  out.relative_difference = std::abs(out.quadrature - out.closed_form) / out.closed_form;
  return out;
}

StirlingCheck stirling_factorial_check(unsigned k_max) {
  if (k_max == 0) throw std::invalid_argument("stirling_factorial_check: k_max must be positive");
  StirlingCheck out;
  out.holds = true;
  out.monotone = true;
  mpz_class ratio_int = 2;  // (2k)!/k! at k = 1
  for (unsigned k = 1; k <= k_max; ++k) {
    if (k > 1) ratio_int *= 2 * (2 * static_cast<unsigned long>(k) - 1);  // (2k)!/k! = 2(2k-1) * (2k-2)!/(k-1)!
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, ratio_int.get_mpz_t());
    const double log_lhs = std::log(mant) + static_cast<double>(exp2) * std::numbers::ln2;
    const double log_rhs = 0.5 * std::numbers::ln2 + k * (std::log(4.0 * k) - 1.0);
    const double r = std::exp(log_lhs - log_rhs);
    if (!(log_lhs <= log_rhs)) out.holds = false;
    if (!out.ratios.empty() && r < out.ratios.back()) out.monotone = false;
    out.ratios.push_back(r);
  }
  return out;
}

RangeReport range_table_bound(const BoundConfig& cfg) {
  cfg.validate();
  RangeReport rep;
  rep.config = cfg;
  rep.loglog_q = cfg.loglog_q();
  rep.Delta = cfg.Delta();
  rep.mu_q = cfg.mu_q();
  rep.var_q = cfg.var_q();
  const double V_lo = cfg.V_small();
  const double V_hi = cfg.V_max();
  if (!(V_hi > V_lo)) throw std::invalid_argument("range_table_bound: empty V-range for this q");

  const double eps = cfg.epsilon;
  const double c_eps = cfg.c_eps();
  const double var = rep.var_q;
  const double Delta = rep.Delta;
  const double log_prefactor = std::log(0.5) + (1.0 - eps) * rep.mu_q / 2.0;

  auto log_bound = [&](Range r, double V) -> double {
    switch (r) {
      case Range::bulk_low: return -(1.0 - (2.0 * cfg.C + 3.0) * eps) * V * V / (2.0 * var);
      case Range::bulk_high: return -c_eps * Delta * V;
      case Range::large: return -c_eps * V * std::log(Delta);
      case Range::higher_order: return std::log(4.0) - c_eps * V * std::log(V);
      case Range::tail: return -100.0 * cfg.log_q;
      case Range::small: return 0.0;
    }
    return 0.0;
  };

  CompensatedSum total;
  for (auto r : {Range::small, Range::bulk_low, Range::bulk_high, Range::large, Range::higher_order, Range::tail}) {
    RangeRecord rec;
    rec.range = r;
    rec.name = range_name(r);
    rec.interval = range_interval(cfg, r);
    double log_integral = -std::numeric_limits<double>::infinity();
    if (r == Range::small) {
      log_integral = std::log(2.0) + V_lo / 2.0;
    } else if (!rec.interval.empty()) {
      log_integral = integrate_log_space(
          [&](double V) { return V / 2.0 + std::min(0.0, log_bound(r, V)); }, rec.interval.lo, rec.interval.hi);
      if (r != Range::tail) {
        rec.representative = choose_x_z_k(0.5 * (rec.interval.lo + rec.interval.hi), cfg, r);
        rec.has_choice = true;
      }
    }
    rec.integral = std::exp(log_integral);
    rec.log_contribution = log_prefactor + log_integral;
    rec.contribution = std::exp(rec.log_contribution);
    total.add(rec.contribution);
    rep.ranges.push_back(rec);
  }

  rep.final_bound = total.value();
  rep.log_final_bound = std::log(rep.final_bound);
  rep.normalization = std::sqrt(var) * std::exp(rep.mu_q / 2.0 + var / 8.0);
  rep.ratio = rep.final_bound / rep.normalization;
  rep.exponent = rep.log_final_bound / rep.loglog_q;
  const double a = 1.0 - (2.0 * cfg.C + 3.0) * eps;
  rep.main_term_exponent = (log_prefactor + std::log(gaussian_integral(a / (2.0 * var), 0.5))) / rep.loglog_q;
  rep.target_exponent = mean_variance_targets(cfg.equal_forms).exponent.get_d();
  rep.small_fraction = rep.ranges.front().contribution / rep.final_bound;
  rep.bulk_admissible = true;
  for (const auto& rec : rep.ranges) {
    if (rec.has_choice && !rec.representative.admissible()) rep.bulk_admissible = false;
  }
  return rep;
}

std::string wi_case_name(WICase c) {
  switch (c) {
    case WICase::level1: return "level1";
    case WICase::mixed: return "mixed";
    case WICase::all_new: return "all_new";
  }
  return "?";
}

WICase wi_case_from_string(const std::string& s) {
  if (s == "level1") return WICase::level1;
  if (s == "mixed") return WICase::mixed;
  if (s == "all_new") return WICase::all_new;
  throw std::invalid_argument("unknown Watson-Ichino case: " + s);
}

WatsonIchino watson_ichino_prefactor(WICase c, std::uint64_t q, int eta, int delta) {
  if (delta != 0 && delta != 1) throw std::invalid_argument("watson_ichino_prefactor: delta must be 0 or 1");
  WatsonIchino out;
  out.C_inf = mpq_class(1 - delta, 2);
  out.C_inf.canonicalize();
  if (c == WICase::level1) {
    out.C_q = 1;
    return out;
  }
  if (!primes::is_prime(q)) throw std::invalid_argument("watson_ichino_prefactor: q must be prime");
  const mpz_class qz(static_cast<unsigned long>(q));
  if (c == WICase::mixed) {
    out.C_q = mpq_class(mpz_class(1), qz);
  } else {
    if (eta != 1 && eta != -1) throw std::invalid_argument("watson_ichino_prefactor: eta must be +1 or -1");
    out.C_q = mpq_class((qz + 1) * (1 + eta), qz * qz);
  }
  out.C_q.canonicalize();
  return out;
}

}  // namespace tplab::pipeline
