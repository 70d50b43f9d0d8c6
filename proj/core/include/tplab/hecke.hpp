#pragma once

#include <gmpxx.h>

#include <map>
#include <string_view>
#include <vector>

namespace tplab::hecke {

using BigInt = mpz_class;

// Univariate polynomial in t with integer coefficients, ascending powers.
// The zero polynomial has no coefficients; otherwise the leading one is nonzero.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs);
  static IntPolynomial monomial(unsigned degree, const BigInt& coeff = 1);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  BigInt coefficient(unsigned k) const;
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  double evaluate(double t) const;

  IntPolynomial& operator+=(const IntPolynomial& o);
  IntPolynomial& operator-=(const IntPolynomial& o);
  IntPolynomial& operator*=(const BigInt& s);
  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(IntPolynomial a, const BigInt& s) { return a *= s; }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

// U_n with U_0 = 1, U_1 = 2t, U_{n+1} = 2t U_n - U_{n-1}.
IntPolynomial chebyshev_u(unsigned n);

// Integer combination of the basis lambda(p^j), j >= 0. Zero coefficients
// are never stored, so == is mathematical equality.
class HeckeExpansion {
 public:
  using Terms = std::map<unsigned, BigInt>;

  HeckeExpansion() = default;
  static HeckeExpansion basis(unsigned j);

  void add_term(unsigned j, const BigInt& c);
  BigInt coefficient(unsigned j) const;
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  unsigned max_index() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
  BigInt coefficient_sum() const;

  // Substitutes lambda(p^j) = sin((j+1)theta)/sin(theta).
  double evaluate_at_angle(double theta) const;

  HeckeExpansion& operator+=(const HeckeExpansion& o);
  HeckeExpansion& operator-=(const HeckeExpansion& o);
  HeckeExpansion& operator*=(const BigInt& s);
  friend HeckeExpansion operator+(HeckeExpansion a, const HeckeExpansion& b) { return a += b; }
  friend HeckeExpansion operator-(HeckeExpansion a, const HeckeExpansion& b) { return a -= b; }
  friend HeckeExpansion operator*(HeckeExpansion a, const BigInt& s) { return a *= s; }
  // Product through the Hecke relation, extended bilinearly.
  friend HeckeExpansion operator*(const HeckeExpansion& a, const HeckeExpansion& b);
  friend bool operator==(const HeckeExpansion&, const HeckeExpansion&) = default;

 private:
  Terms terms_;
};

// lambda(p^m) lambda(p^n) = sum_{j=0}^{min(m,n)} lambda(p^{m+n-2j}).
HeckeExpansion hecke_multiply(unsigned m, unsigned n);

// Entry n (0 <= n <= n_max) is the expansion of lambda(p^d)^n; entry 0 is {0:1}.
// Throws std::invalid_argument when d or n_max is 0.
std::vector<HeckeExpansion> hecke_power_table(unsigned d, unsigned n_max);

// n!/((n/2)! (n/2+1)!) for even n, 0 for odd n.
BigInt catalan_coefficient(unsigned n);

// alpha^k + alpha^{-k} in the lambda(p^j) basis (alpha_1 alpha_2 = 1).
HeckeExpansion power_sum_in_lambda(unsigned k);

// Re-expresses a polynomial in t as a combination of U_j(t) by repeated
// division by the leading term. Independent of the Hecke relation.
HeckeExpansion to_chebyshev_basis(const IntPolynomial& poly);

double lambda_at_angle(unsigned j, double theta);

enum class LiftLabel {
  constant,
  sym4_pi,
  sym2_pi,
  sym2_sigma1_sym2_sigma2,
  sym2_sigma1,
  sym2_sigma2,
  sym2_pi_sigma1_sigma2,
  sigma1_sigma2,
  sym2_pi_sym2_sigma,
  sym4_sigma,
  sym2_sigma,
};

std::string_view to_string(LiftLabel label);

// Coefficients of (lambda_pi(p)^2 + lambda_s1(p) lambda_s2(p))^2 (distinct) or
// (lambda_pi(p)^2 + lambda_s(p)^2)^2 (equal) in products of lift eigenvalues.
std::map<LiftLabel, BigInt> variance_expansion(bool equal_forms);

// Evaluates both sides of the variance identity at the given Satake angles.
// For equal_forms only theta_pi and theta_s1 are used.
struct VarianceCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};
VarianceCheck variance_identity_at(bool equal_forms, double theta_pi, double theta_s1,
                                   double theta_s2);

}  // namespace tplab::hecke
