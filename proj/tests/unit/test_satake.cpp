#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tplab/primes.hpp"
#include "tplab/random_model.hpp"
#include "tplab/satake.hpp"

using namespace tplab::satake;

namespace {

void expect_poly(const InverseFactor& got, const InverseFactor& want, double tol = 1e-13) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(std::abs(got[k] - want[k]), 0.0, tol) << "k = " << k;
}

InverseFactor times(const InverseFactor& a, const InverseFactor& b) {
  InverseFactor c(a.size() + b.size() - 1, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

GL2Local from_lambda(std::uint64_t p, double lam) {
  return GL2Local::tempered(p, std::acos(std::clamp(lam / 2.0, -1.0, 1.0)));
}

}  // namespace

TEST(Satake, PolynomialFromRoots) {
  const Complex roots[] = {2.0, 3.0};
  expect_poly(polynomial_from_roots(roots), {1.0, -5.0, 6.0});
  expect_poly(polynomial_from_roots({}), {1.0});
}

TEST(Satake, TripleUnramifiedTrivial) {
  const auto g = GL2Local::unramified(5, 1.0);
  const auto f = triple_local_factor(g, g, g);
  // (1 - X)^8
  const double binom[] = {1, 8, 28, 56, 70, 56, 28, 8, 1};
  InverseFactor want;
  for (int k = 0; k <= 8; ++k) want.push_back(binom[k] * (k % 2 ? -1.0 : 1.0));
  expect_poly(f.coefficients, want, 1e-12);
}

TEST(Satake, TripleUnramifiedRootsAreProducts) {
  const auto a = GL2Local::tempered(7, 0.3), b = GL2Local::tempered(7, 1.1), c = GL2Local::tempered(7, 2.0);
  const auto f = triple_local_factor(a, b, c);
  ASSERT_EQ(f.roots.size(), 8u);
  Complex tr = 0.0;
  for (auto r : f.roots) {
    EXPECT_NEAR(std::abs(r), 1.0, 1e-14);
    tr += r;
  }
  EXPECT_NEAR(std::abs(tr - a.lambda() * b.lambda() * c.lambda()), 0.0, 1e-13);
  EXPECT_TRUE(LocalSatake(f.roots).closed_under_inversion());
}

TEST(Satake, TripleAllSpecial) {
  const double p = 3.0;
  const auto f = triple_local_factor(GL2Local::special(3, 1), GL2Local::special(3, -1), GL2Local::special(3, -1));
  const InverseFactor lin1{1.0, -1.0 / std::sqrt(p)};
  const InverseFactor lin3{1.0, -1.0 / (p * std::sqrt(p))};
  expect_poly(f.coefficients, times(times(lin1, lin1), lin3));
}

TEST(Satake, TripleOneAndTwoSpecial) {
  const auto t = GL2Local::tempered(11, 0.4);
  const auto f1 = triple_local_factor(t, GL2Local::special(11, -1), t);
  EXPECT_EQ(f1.coefficients.size(), 5u);
  for (auto r : f1.roots) EXPECT_NEAR(std::abs(r), 1.0 / std::sqrt(11.0), 1e-14);
  const auto f2 = triple_local_factor(GL2Local::special(11, 1), t, GL2Local::special(11, 1));
  EXPECT_EQ(f2.coefficients.size(), 5u);
  // factor symmetric in its arguments
  expect_poly(f2.coefficients, triple_local_factor(t, GL2Local::special(11, 1), GL2Local::special(11, 1)).coefficients);
}

TEST(Satake, TripleRejectsMixedPrimes) {
  EXPECT_THROW(triple_local_factor(GL2Local::tempered(2, 0.1), GL2Local::tempered(3, 0.1), GL2Local::tempered(2, 0.1)),
               std::invalid_argument);
}

TEST(Satake, KimSarnakRange) {
  EXPECT_NO_THROW(GL2Local::unramified(2, std::pow(2.0, 0.1)));
  EXPECT_THROW(GL2Local::unramified(2, std::pow(2.0, 0.2)), std::invalid_argument);
}

TEST(Satake, SymmetricLifts) {
  const auto g = GL2Local::tempered(13, std::numbers::pi / 3.0);
  EXPECT_NEAR(std::abs(lift_sym(4, g).trace() - Complex(-1.0, 0.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(lift_sym(2, g).trace() - Complex(0.0, 0.0)), 0.0, 1e-14);
  EXPECT_EQ(lift_sym(2, g).size(), 3u);
  EXPECT_EQ(lift_sym(4, g).size(), 5u);
  EXPECT_THROW(lift_sym(2, GL2Local::special(13, 1)), std::invalid_argument);
}

TEST(Satake, Sym2Factorization) {
  for (double theta = 0.05; theta < 3.1; theta += 0.3) {
    const auto c = factorization_check(17, std::polar(1.0, theta));
    EXPECT_TRUE(c.holds) << theta;
    EXPECT_LT(c.residual, 1e-12);
  }
  EXPECT_TRUE(factorization_check(2, std::pow(2.0, 7.0 / 64.0)).holds);
}

TEST(Satake, MultisetDistance) {
  const LocalSatake a({1.0, 2.0, 3.0}), b({3.0, 1.0, 2.0});
  EXPECT_DOUBLE_EQ(multiset_distance(a, b), 0.0);
  EXPECT_TRUE(std::isinf(multiset_distance(a, LocalSatake({1.0}))));
}

TEST(Dirichlet, ZetaHasUnitCoefficients) {
  std::map<std::uint64_t, InverseFactor> locals;
  for (auto p : tplab::primes::primes_up_to(200)) locals[p] = {1.0, -1.0};
  const auto s = dirichlet_expand(locals, 200);
  EXPECT_EQ(s.length(), 200u);
  for (std::uint64_t n = 1; n <= 200; ++n) EXPECT_NEAR(std::abs(s(n) - Complex(1.0, 0.0)), 0.0, 1e-15);
}

TEST(Dirichlet, HeckeMultiplicativity) {
  const auto table = tplab::primes::primes_up_to(500);
  const auto form = tplab::model::FormModel::sato_tate(table, 11, 0);
  std::map<std::uint64_t, InverseFactor> locals;
  for (std::size_t i = 0; i < table.size(); ++i) locals[table[i]] = satake_of(from_lambda(table[i], form.lambdas()[i])).inverse_factor();
  const auto s = dirichlet_expand(locals, 500);
  EXPECT_LT(s.multiplicativity_defect(500), 1e-12);
  // lambda(p^2) = lambda(p)^2 - 1
  EXPECT_NEAR(std::abs(s(4) - (s(2) * s(2) - 1.0)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(s(27) - (s(3) * s(9) - s(3))), 0.0, 1e-13);
}

TEST(Dirichlet, MissingPrimeThrows) {
  std::map<std::uint64_t, InverseFactor> locals{{2, {1.0, -1.0}}};
  EXPECT_THROW(dirichlet_expand(locals, 10), std::invalid_argument);
  locals = {{2, {2.0, -1.0}}, {3, {1.0}}, {5, {1.0}}, {7, {1.0}}};
  EXPECT_THROW(dirichlet_expand(locals, 10), std::invalid_argument);
}

TEST(Dirichlet, InvertSeries) {
  const auto a = invert_series({1.0, -0.5}, 5);
  for (int k = 0; k <= 5; ++k) EXPECT_NEAR(a[k].real(), std::pow(0.5, k), 1e-15);
}

TEST(Dirichlet, LogLAtOneViaPrimes) {
  const auto table = tplab::primes::primes_up_to(100'000);
  const auto form = tplab::model::FormModel::sato_tate(table, 3, 1);
  std::map<std::uint64_t, InverseFactor> locals;
  for (std::size_t i = 0; i < table.size(); ++i) locals[table[i]] = satake_of(from_lambda(table[i], form.lambdas()[i])).inverse_factor();
  const auto s = dirichlet_expand(locals, 100'000);
  const auto r = log_L_at_1_via_primes(s, 100'000);
  EXPECT_LE(std::abs(r.difference()), 0.5);
}

TEST(Arch, ParameterValidation) {
  EXPECT_THROW(ArchParams::exceptional(0.2), std::invalid_argument);
  EXPECT_THROW(ArchParams::make(Complex(0.1, 1.0)), std::invalid_argument);
  EXPECT_THROW(ArchParams::make(Complex(0.0, 1.0), 2), std::invalid_argument);
  EXPECT_DOUBLE_EQ(ArchParams::tempered(-3.0).t(), 3.0);
}

TEST(Arch, OddParityRejected) {
  const auto a = ArchParams::tempered(1.0, 1);
  const auto b = ArchParams::tempered(2.0, 0);
  EXPECT_THROW(arch_triple_ratio(a, b, b), std::invalid_argument);
}

TEST(Arch, RatioBoundedOnGrid) {
  double worst = 0.0;
  for (double t1 : {0.0, 0.5, 3.0, 20.0, 90.0})
    for (double t2 : {0.1, 2.0, 15.0, 60.0})
      for (double t3 : {0.3, 7.0, 40.0}) {
        const auto r = arch_triple_ratio(ArchParams::tempered(t1), ArchParams::tempered(t2), ArchParams::tempered(t3));
        EXPECT_TRUE(std::isfinite(r.log_ratio));
        worst = std::max(worst, r.ratio_over_bound());
      }
  EXPECT_LT(worst, 5000.0);
  // along a ray the ratio settles to a constant multiple of the bound
  const auto at = [](double t) {
    return arch_triple_ratio(ArchParams::tempered(t), ArchParams::tempered(1.3 * t), ArchParams::tempered(0.5 * t)).ratio_over_bound();
  };
  EXPECT_NEAR(at(400.0) / at(200.0), 1.0, 0.05);
  const auto e = arch_triple_ratio(ArchParams::exceptional(0.1), ArchParams::tempered(4.0, 1), ArchParams::tempered(9.0, 1));
  EXPECT_TRUE(std::isfinite(e.log_ratio));
}
