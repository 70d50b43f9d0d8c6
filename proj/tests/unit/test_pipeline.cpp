#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tplab/pipeline.hpp"
#include "tplab/primes.hpp"

using namespace tplab::pipeline;

namespace {

std::vector<PrimeCoefficients> constant_data(double x, double l1, double l2, double l3) {
  std::vector<PrimeCoefficients> out;
  for (auto p : tplab::primes::primes_up_to(static_cast<std::uint64_t>(x))) out.push_back(coefficients_from_lambda(p, l1, l2, l3));
  return out;
}

}  // namespace

TEST(PowerSums, Table) {
  EXPECT_EQ(power_sum_coefficient(1, 1), 1);
  EXPECT_EQ(power_sum_coefficient(0, 2), -1);
  EXPECT_EQ(power_sum_coefficient(2, 2), 1);
  EXPECT_EQ(power_sum_coefficient(0, 3), 0);
  EXPECT_EQ(power_sum_coefficient(1, 3), -1);
  EXPECT_EQ(power_sum_coefficient(3, 5), -1);
  EXPECT_EQ(power_sum_coefficient(5, 5), 1);
}

TEST(Coefficients, HeckeRelation) {
  const auto c = coefficients_from_lambda(5, 1.0, 0.0, 2.0);
  EXPECT_DOUBLE_EQ(c.lambda[0][0], 1.0);
  EXPECT_DOUBLE_EQ(c.lambda[0][3], -1.0);
  EXPECT_DOUBLE_EQ(c.lambda[1][2], -1.0);
  EXPECT_DOUBLE_EQ(c.lambda[1][4], 1.0);
  EXPECT_DOUBLE_EQ(c.lambda[2][5], 6.0);
}

TEST(Chandee, ZeroCoefficientsLeaveConductor) {
  const auto r = chandee_rhs(constant_data(1000, 0.0, 0.0, 0.0), 1000.0, {}, std::log(1e6));
  EXPECT_DOUBLE_EQ(r.s[1], 0.0);
  EXPECT_NEAR(r.conductor_term, 10.0 * std::log(1e6) / std::log(1000.0), 1e-14);
  // lambda(p^2) = -1 still feeds the n = 2 term through c(0, 2)
  EXPECT_NEAR(r.total, r.conductor_term + r.higher_order(), 1e-14);
}

TEST(Chandee, SinglePrime) {
  const std::vector<PrimeCoefficients> d{coefficients_from_lambda(2, 1.0, 1.0, 1.0)};
  const double x = 3.0, lx = std::log(x);
  const auto r = chandee_rhs(d, x, {3}, 0.0);
  const double expected = std::pow(2.0, -0.5 - 1.0 / lx) * std::log(x / 2.0) / lx;
  EXPECT_NEAR(r.s[1], expected, 1e-15);
  EXPECT_DOUBLE_EQ(r.higher_order(), 0.0);
  EXPECT_NEAR(r.total, expected, 1e-15);
}

TEST(Chandee, MissingPrimeThrows) {
  const std::vector<PrimeCoefficients> d{coefficients_from_lambda(2, 1.0, 1.0, 1.0)};
  EXPECT_THROW(chandee_rhs(d, 10.0, {}, 0.0), std::invalid_argument);
}

TEST(Chandee, HigherOrderBound) {
  for (double x : {100.0, 1e4}) {
    const double bound = higher_order_bound(x);
    for (double l : {-2.0, -0.7, 0.3, 2.0}) {
      const auto r = chandee_rhs(constant_data(x, l, -l, l), x, {}, 0.0);
      EXPECT_LE(std::abs(r.higher_order()), bound) << x << " " << l;
    }
  }
}

TEST(Targets, ExactRationals) {
  const auto d = mean_variance_targets(false);
  EXPECT_EQ(d.mu_coefficient, mpq_class(-3, 2));
  EXPECT_EQ(d.var_coefficient, mpq_class(3));
  EXPECT_EQ(d.exponent, mpq_class(-3, 8));
  const auto e = mean_variance_targets(true);
  EXPECT_EQ(e.mu_coefficient, mpq_class(-2));
  EXPECT_EQ(e.var_coefficient, mpq_class(6));
  EXPECT_EQ(e.exponent, mpq_class(-1, 4));
}

TEST(Gaussian, ClosedForm) {
  EXPECT_NEAR(gaussian_integral(1.0, 0.0), std::sqrt(std::numbers::pi), 1e-15);
  EXPECT_NEAR(gaussian_integral(0.5, 0.0), std::sqrt(2.0 * std::numbers::pi), 1e-15);
  for (double a : {0.01, 0.3, 2.0, 50.0})
    for (double b : {-3.0, 0.0, 0.5, 8.0}) {
      if (b * b / (4.0 * a) > 700.0) continue;
      EXPECT_LT(gaussian_integral_checked(a, b).relative_difference, 1e-12) << a << " " << b;
    }
}

TEST(Stirling, FactorialBound) {
  const auto s = stirling_factorial_check(200);
  EXPECT_TRUE(s.holds);
  EXPECT_TRUE(s.monotone);
  ASSERT_EQ(s.ratios.size(), 200u);
  // k = 1: 2 / (sqrt 2 * 4 / e)
  EXPECT_NEAR(s.ratios[0], 2.0 / 2.081040380091556, 1e-14);
  EXPECT_LT(s.ratios.back(), 1.0);
}

TEST(BoundConfig, Validation) {
  EXPECT_THROW(BoundConfig::from_q(1.0), std::invalid_argument);
  auto c = BoundConfig::from_q(1e12);
  EXPECT_NO_THROW(c.validate());
  c.epsilon = 0.02;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  EXPECT_THROW(BoundConfig::from_q(10.0).validate(), std::invalid_argument);
}

TEST(BoundConfig, DerivedQuantities) {
  const auto c = BoundConfig::from_q(1e12);
  const double ll = std::log(std::log(1e12));
  EXPECT_NEAR(c.loglog_q(), ll, 1e-14);
  EXPECT_NEAR(c.Delta(), std::log(ll), 1e-14);
  EXPECT_NEAR(c.mu_q(), -1.5 * ll, 1e-14);
  EXPECT_NEAR(c.var_q(), 3.0 * ll, 1e-14);
  EXPECT_NEAR(c.V_small(), c.var_q() / c.Delta(), 1e-14);
  EXPECT_NEAR(c.V_bulk(), c.var_q() * c.Delta(), 1e-14);
  EXPECT_NEAR(c.V_max(), 2.0 * std::log(1e12) / ll, 1e-12);
}

TEST(Ranges, PartitionTheVRange) {
  for (double q : {1e8, 1e12, 1e30}) {
    const auto c = BoundConfig::from_q(q);
    const auto s = range_interval(c, Range::small);
    const auto bl = range_interval(c, Range::bulk_low);
    const auto bh = range_interval(c, Range::bulk_high);
    const auto lg = range_interval(c, Range::large);
    EXPECT_DOUBLE_EQ(s.hi, bl.lo);
    EXPECT_DOUBLE_EQ(bh.hi, lg.lo);
    EXPECT_DOUBLE_EQ(lg.hi, c.V_max());
    EXPECT_LE(bl.hi, bh.hi);
  }
  for (Range r : {Range::small, Range::bulk_low, Range::bulk_high, Range::large, Range::higher_order, Range::tail})
    EXPECT_EQ(range_from_string(range_name(r)), r);
  EXPECT_THROW(range_from_string("nope"), std::invalid_argument);
}

TEST(Ranges, ChoiceFlags) {
  const auto c = BoundConfig::from_q(1e12);
  const auto iv = range_interval(c, Range::bulk_low);
  ASSERT_FALSE(iv.empty());
  const auto x = choose_x_z_k(0.5 * (iv.lo + iv.hi), c, Range::bulk_low);
  EXPECT_GT(x.k, 0u);
  EXPECT_NEAR(x.k_log_z, x.k * x.log_z, 1e-9 * x.k_log_z);
  EXPECT_EQ(x.flag_k_log_z, x.k_log_z < c.log_q / 2.0);
  EXPECT_EQ(x.flag_k_log_x, x.k_log_x <= c.log_q / 100.0);
  EXPECT_EQ(x.flag_x_large, x.log_x >= 9.0 / c.epsilon * std::log(c.log_q));
  EXPECT_THROW(choose_x_z_k(1.0, c, Range::small), std::invalid_argument);
  EXPECT_THROW(choose_x_z_k(1.0, c, Range::tail), std::invalid_argument);
  EXPECT_THROW(choose_x_z_k(1e9, c, Range::large), std::invalid_argument);
}

TEST(Ranges, SmallFractionDecreases) {
  double prev = 2.0;
  for (double q : {1e10, 1e20, 1e40, 1e80}) {
    const auto r = range_table_bound(BoundConfig::from_q(q));
    EXPECT_LT(r.small_fraction, prev) << q;
    prev = r.small_fraction;
  }
}

TEST(Ranges, ReportConsistency) {
  const auto r = range_table_bound(BoundConfig::from_q(1e12));
  double total = 0.0;
  for (const auto& rec : r.ranges) total += rec.contribution;
  EXPECT_NEAR(r.final_bound, total, 1e-12 * total);
  EXPECT_NEAR(r.log_final_bound, std::log(r.final_bound), 1e-12);
  EXPECT_NEAR(r.ratio, r.final_bound / r.normalization, 1e-12 * r.ratio);
  EXPECT_DOUBLE_EQ(r.target_exponent, -0.375);
}

TEST(WatsonIchino, Prefactors) {
  EXPECT_EQ(watson_ichino_prefactor(WICase::level1, 101).C_q, mpq_class(1));
  EXPECT_EQ(watson_ichino_prefactor(WICase::mixed, 101).C_q, mpq_class(1, 101));
  EXPECT_EQ(watson_ichino_prefactor(WICase::all_new, 101, -1).C_q, mpq_class(0));
  EXPECT_EQ(watson_ichino_prefactor(WICase::all_new, 101, 1).C_q, mpq_class(2 * 102, 101 * 101));
  EXPECT_EQ(watson_ichino_prefactor(WICase::level1, 7, 1, 0).C_inf, mpq_class(1, 2));
  EXPECT_EQ(watson_ichino_prefactor(WICase::level1, 7, 1, 1).C_inf, mpq_class(0));
  for (WICase w : {WICase::level1, WICase::mixed, WICase::all_new}) EXPECT_EQ(wi_case_from_string(wi_case_name(w)), w);
}
