#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tplab/hecke.hpp"

using namespace tplab::hecke;

namespace {

HeckeExpansion expansion(std::initializer_list<std::pair<unsigned, long>> terms) {
  HeckeExpansion e;
  for (auto [j, c] : terms) e.add_term(j, c);
  return e;
}

}  // namespace

TEST(Chebyshev, FirstPolynomials) {
  EXPECT_EQ(chebyshev_u(0), IntPolynomial({1}));
  EXPECT_EQ(chebyshev_u(1), IntPolynomial({0, 2}));
  EXPECT_EQ(chebyshev_u(2), IntPolynomial({-1, 0, 4}));
  EXPECT_EQ(chebyshev_u(5), IntPolynomial({0, 6, 0, -32, 0, 32}));
}

TEST(Chebyshev, ExactLargeDegree) {
  // leading coefficient 2^n, exact beyond 64 bits
  const auto u = chebyshev_u(100);
  EXPECT_EQ(u.degree(), 100);
  mpz_class two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, 100);
  EXPECT_EQ(u.coefficient(100), two_pow);
}

TEST(Hecke, MultiplyRelation) {
  EXPECT_EQ(hecke_multiply(1, 1), expansion({{2, 1}, {0, 1}}));
  EXPECT_EQ(hecke_multiply(7, 0), expansion({{7, 1}}));
  EXPECT_EQ(hecke_multiply(2, 1), expansion({{3, 1}, {1, 1}}));
  EXPECT_EQ(hecke_multiply(2, 3), expansion({{5, 1}, {3, 1}, {1, 1}}));
}

TEST(Hecke, PowerTable) {
  const auto t = hecke_power_table(1, 4);
  EXPECT_EQ(t[0], expansion({{0, 1}}));
  EXPECT_EQ(t[3], expansion({{3, 1}, {1, 2}}));
  EXPECT_EQ(t[4], expansion({{4, 1}, {2, 3}, {0, 2}}));
  for (unsigned d = 1; d <= 6; ++d) EXPECT_EQ(hecke_power_table(d, 1)[1].coefficient(0), 0);
  EXPECT_THROW(hecke_power_table(0, 3), std::invalid_argument);
  EXPECT_THROW(hecke_power_table(2, 0), std::invalid_argument);
}

TEST(Hecke, PowerTableMatchesPolynomialOracle) {
  for (unsigned d = 1; d <= 4; ++d) {
    const auto t = hecke_power_table(d, 8);
    IntPolynomial p = IntPolynomial::monomial(0);
    for (unsigned n = 1; n <= 8; ++n) {
      p = p * chebyshev_u(d);
      EXPECT_EQ(to_chebyshev_basis(p), t[n]) << "d=" << d << " n=" << n;
    }
  }
}

TEST(Hecke, ChebyshevBasisRejectsNonIntegral) {
  EXPECT_THROW(to_chebyshev_basis(IntPolynomial({0, 1})), std::domain_error);
}

TEST(Hecke, Catalan) {
  EXPECT_EQ(catalan_coefficient(0), 1);
  EXPECT_EQ(catalan_coefficient(2), 1);
  EXPECT_EQ(catalan_coefficient(3), 0);
  EXPECT_EQ(catalan_coefficient(6), 5);
  EXPECT_EQ(catalan_coefficient(8), 14);
  EXPECT_EQ(catalan_coefficient(60), mpz_class("3814986502092304"));
}

TEST(Hecke, PowerSums) {
  EXPECT_EQ(power_sum_in_lambda(1), expansion({{1, 1}}));
  EXPECT_EQ(power_sum_in_lambda(2), expansion({{2, 1}, {0, -1}}));
  EXPECT_EQ(power_sum_in_lambda(3), expansion({{3, 1}, {1, -1}}));
  EXPECT_EQ(power_sum_in_lambda(4), expansion({{4, 1}, {2, -1}}));
  EXPECT_EQ(power_sum_in_lambda(5), expansion({{5, 1}, {3, -1}}));
  EXPECT_THROW(power_sum_in_lambda(0), std::invalid_argument);
}

TEST(Hecke, PowerSumsOnAngleGrid) {
  for (unsigned k = 1; k <= 8; ++k) {
    const auto e = power_sum_in_lambda(k);
    for (int i = 0; i <= 64; ++i) {
      const double theta = std::numbers::pi * i / 64.0;
      EXPECT_NEAR(e.evaluate_at_angle(theta), 2.0 * std::cos(k * theta), 1e-11) << k << " " << theta;
    }
  }
}

TEST(Hecke, LambdaAtAngle) {
  EXPECT_NEAR(lambda_at_angle(4, std::numbers::pi / 3.0), -1.0, 1e-14);
  EXPECT_DOUBLE_EQ(lambda_at_angle(3, 0.0), 4.0);
  EXPECT_DOUBLE_EQ(lambda_at_angle(3, std::numbers::pi), -4.0);
  EXPECT_NEAR(lambda_at_angle(2, 0.7), std::pow(2.0 * std::cos(0.7), 2) - 1.0, 1e-14);
}

TEST(Hecke, VarianceExpansionDistinct) {
  const std::map<LiftLabel, BigInt> expected = {
      {LiftLabel::constant, 3},    {LiftLabel::sym4_pi, 1},     {LiftLabel::sym2_pi, 3},
      {LiftLabel::sym2_sigma1_sym2_sigma2, 1}, {LiftLabel::sym2_sigma1, 1}, {LiftLabel::sym2_sigma2, 1},
      {LiftLabel::sym2_pi_sigma1_sigma2, 2},  {LiftLabel::sigma1_sigma2, 2}};
  EXPECT_EQ(variance_expansion(false), expected);
}

TEST(Hecke, VarianceExpansionEqual) {
  const std::map<LiftLabel, BigInt> expected = {
      {LiftLabel::constant, 6},           {LiftLabel::sym4_pi, 1},    {LiftLabel::sym2_pi, 5},
      {LiftLabel::sym2_pi_sym2_sigma, 2}, {LiftLabel::sym4_sigma, 1}, {LiftLabel::sym2_sigma, 5}};
  EXPECT_EQ(variance_expansion(true), expected);
}

TEST(Hecke, VarianceIdentityNumerically) {
  for (int i = 0; i < 200; ++i) {
    const double a = 0.013 * i, b = 3.0 - 0.011 * i, c = 0.5 + 0.007 * i;
    for (bool eq : {false, true}) {
      const auto v = variance_identity_at(eq, a, b, c);
      EXPECT_NEAR(v.lhs, v.rhs, 1e-12 * std::max(1.0, std::abs(v.lhs)));
    }
  }
}

TEST(Hecke, ExpansionArithmetic) {
  const auto a = expansion({{1, 2}, {3, -1}});
  const auto b = expansion({{1, -2}});
  EXPECT_EQ(a + b, expansion({{3, -1}}));
  EXPECT_EQ((a - a).size(), 0u);
  EXPECT_EQ(a * BigInt(0), HeckeExpansion{});
  EXPECT_EQ(HeckeExpansion::basis(1) * HeckeExpansion::basis(1), hecke_multiply(1, 1));
  EXPECT_EQ(a.coefficient_sum(), 1);
}
