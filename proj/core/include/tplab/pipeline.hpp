#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace tplab::pipeline {

// lambda_{pi_i}(p^m) for i = 0, 1, 2 and m = 0..5.
struct PrimeCoefficients {
  std::uint64_t p = 0;
  std::array<std::array<double, 6>, 3> lambda{};
};

// Builds the table under the Hecke relation lambda(p^m) = U_m(lambda(p)/2).
PrimeCoefficients coefficients_from_lambda(std::uint64_t p, double l1, double l2, double l3);

// c(m, n): alpha^n + alpha^{-n} = sum_m c(m, n) lambda(p^m), n = 1..5, cached.
long power_sum_coefficient(unsigned m, unsigned n);

struct ChandeeTerms {
  std::array<double, 6> s{};  // s[n] = S_{n/2}, n = 1..5
  double conductor_term = 0.0;
  double total = 0.0;
  double higher_order() const { return s[2] + s[3] + s[4] + s[5]; }
};

// Right-hand side of the Chandee-type inequality: sum_{n<=5} S_{n/2} plus
// 10 log c / log x. Throws std::invalid_argument if a prime <= x outside
// `excluded` has no coefficients.
ChandeeTerms chandee_rhs(const std::vector<PrimeCoefficients>& data, double x,
                         const std::set<std::uint64_t>& excluded, double log_conductor);

// Upper bound for |sum_{n=2}^5 S_{n/2}| with unitary Satake data.
double higher_order_bound(double x, const std::set<std::uint64_t>& excluded = {});

struct Targets {
  mpq_class mu_coefficient;
  mpq_class var_coefficient;
  mpq_class exponent;  // mu/2 + var/8
};

Targets mean_variance_targets(bool equal_forms);

struct BoundConfig {
  double log_q = 0.0;  // log of the level scale q
  double epsilon = 0.005;
  double A = 2.0;
  double C = 6.0;
  double B = 1.0;
  double c_eps_factor = 0.1;  // c(eps) = c_eps_factor * eps
  bool equal_forms = false;
  double mu_correction = 0.0;
  double var_correction = 0.0;

  static BoundConfig from_q(double q, double epsilon = 0.005, bool equal_forms = false);
  void validate() const;  // throws std::invalid_argument

  double loglog_q() const;
  double Delta() const;
  double mu_q() const;
  double var_q() const;
  double c_eps() const { return c_eps_factor * epsilon; }
  double V_small() const;  // var_q / Delta
  double V_bulk() const;   // Delta var_q
  double V_max() const;    // A log q / log log q
};

enum class Range { small, bulk_low, bulk_high, large, higher_order, tail };

std::string range_name(Range r);
Range range_from_string(const std::string& s);

struct RangeInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(hi > lo); }
};

RangeInterval range_interval(const BoundConfig& cfg, Range r);

struct XZK {
  Range range = Range::bulk_low;
  double V = 0.0;
  double log_x = 0.0;
  double log_z = 0.0;
  std::uint64_t k = 0;
  double k_log_z = 0.0;
  double k_log_x = 0.0;
  bool flag_k_log_z = false;     // k log z < log q / 2
  bool flag_k_log_x = false;     // k log x <= log q / 100
  bool flag_x_large = false;     // x >= (log q)^{9/eps}
  bool admissible() const;       // the flags the range relies on
};

// Throws std::invalid_argument for the small/tail ranges (no moment choice)
// or when V lies outside the range's interval.
XZK choose_x_z_k(double V, const BoundConfig& cfg, Range r);

struct GaussianIntegral {
  double closed_form = 0.0;
  double quadrature = 0.0;
  double relative_difference = 0.0;
};

// int exp(-alpha x^2 + beta x) dx = exp(beta^2 / 4 alpha) sqrt(pi / alpha).
double gaussian_integral(double alpha, double beta);
GaussianIntegral gaussian_integral_checked(double alpha, double beta);

struct StirlingCheck {
  bool holds = false;
  bool monotone = false;  // ratios non-decreasing in k
  std::vector<double> ratios;  // ((2k)!/k!) / (sqrt 2 (4k/e)^k), k = 1..k_max
};

// (2k)!/k! <= sqrt(2) (4k/e)^k for 1 <= k <= k_max, factorials exact.
StirlingCheck stirling_factorial_check(unsigned k_max);

struct RangeRecord {
  Range range = Range::small;
  std::string name;
  RangeInterval interval;
  XZK representative;          // choices at the interval midpoint (not for small/tail)
  bool has_choice = false;
  double integral = 0.0;       // int e^{V/2} min(1, bound(V)) dV over the interval
  double contribution = 0.0;   // (1/2) e^{(1-eps) mu/2} integral, in units of q
  double log_contribution = 0.0;
};

struct RangeReport {
  BoundConfig config;
  double loglog_q = 0.0;
  double Delta = 0.0;
  double mu_q = 0.0;
  double var_q = 0.0;
  std::vector<RangeRecord> ranges;
  double final_bound = 0.0;      // in units of q
  double log_final_bound = 0.0;
  double normalization = 0.0;    // sqrt(var) e^{mu/2 + var/8}
  double ratio = 0.0;
  double exponent = 0.0;         // log(final bound / q) / log log q
  double main_term_exponent = 0.0;
  double target_exponent = 0.0;
  double small_fraction = 0.0;
  bool bulk_admissible = false;
};

// Throws std::invalid_argument if the V-range (var/Delta, A log q/log log q) is empty.
RangeReport range_table_bound(const BoundConfig& cfg);

enum class WICase { level1, mixed, all_new };

std::string wi_case_name(WICase c);
WICase wi_case_from_string(const std::string& s);

struct WatsonIchino {
  mpq_class C_q;
  mpq_class C_inf;
};

// q prime; eta in {+1, -1} for all_new; delta the parity in {0, 1}.
WatsonIchino watson_ichino_prefactor(WICase c, std::uint64_t q, int eta = 1, int delta = 0);

}  // namespace tplab::pipeline
