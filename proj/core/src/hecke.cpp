#include "tplab/hecke.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace tplab::hecke {

// ---- IntPolynomial ----------------------------------------------------------

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

IntPolynomial IntPolynomial::monomial(unsigned degree, const BigInt& coeff) {
  std::vector<BigInt> c(degree + 1, 0);
  c[degree] = coeff;
  return IntPolynomial(std::move(c));
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPolynomial::coefficient(unsigned k) const {
  return k < coeffs_.size() ? coeffs_[k] : BigInt(0);
}

double IntPolynomial::evaluate(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + it->get_d();
  return acc;
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

IntPolynomial& IntPolynomial::operator*=(const BigInt& s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPolynomial(std::move(out));
}

IntPolynomial chebyshev_u(unsigned n) {
  IntPolynomial prev = IntPolynomial::monomial(0, 1);
  if (n == 0) return prev;
  IntPolynomial cur = IntPolynomial::monomial(1, 2);
  const IntPolynomial two_t = IntPolynomial::monomial(1, 2);
  for (unsigned k = 1; k < n; ++k) {
    IntPolynomial next = two_t * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// ---- HeckeExpansion ---------------------------------------------------------

HeckeExpansion HeckeExpansion::basis(unsigned j) {
  HeckeExpansion e;
  e.terms_.emplace(j, 1);
  return e;
}

void HeckeExpansion::add_term(unsigned j, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(j, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

BigInt HeckeExpansion::coefficient(unsigned j) const {
  auto it = terms_.find(j);
  return it == terms_.end() ? BigInt(0) : it->second;
}

BigInt HeckeExpansion::coefficient_sum() const {
  BigInt s = 0;
  for (const auto& [j, c] : terms_) s += c;
  return s;
}

double HeckeExpansion::evaluate_at_angle(double theta) const {
  double acc = 0.0;
  for (const auto& [j, c] : terms_) acc += c.get_d() * lambda_at_angle(j, theta);
  return acc;
}

HeckeExpansion& HeckeExpansion::operator+=(const HeckeExpansion& o) {
  for (const auto& [j, c] : o.terms_) add_term(j, c);
  return *this;
}

HeckeExpansion& HeckeExpansion::operator-=(const HeckeExpansion& o) {
  for (const auto& [j, c] : o.terms_) add_term(j, -c);
  return *this;
}

HeckeExpansion& HeckeExpansion::operator*=(const BigInt& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [j, c] : terms_) c *= s;
  return *this;
}

HeckeExpansion operator*(const HeckeExpansion& a, const HeckeExpansion& b) {
  HeckeExpansion out;
  for (const auto& [i, ci] : a.terms_)
    for (const auto& [j, cj] : b.terms_) {
      const BigInt c = ci * cj;
      const unsigned lo = std::min(i, j);
      for (unsigned k = 0; k <= lo; ++k) out.add_term(i + j - 2 * k, c);
    }
  return out;
}

HeckeExpansion hecke_multiply(unsigned m, unsigned n) {
  HeckeExpansion out;
  for (unsigned j = 0; j <= std::min(m, n); ++j) out.add_term(m + n - 2 * j, 1);
  return out;
}

std::vector<HeckeExpansion> hecke_power_table(unsigned d, unsigned n_max) {
  if (d == 0) throw std::invalid_argument("hecke_power_table: d must be >= 1");
  if (n_max == 0) throw std::invalid_argument("hecke_power_table: n_max must be >= 1");
  std::vector<HeckeExpansion> table;
  table.reserve(n_max + 1);
  table.push_back(HeckeExpansion::basis(0));
  const HeckeExpansion step = HeckeExpansion::basis(d);
  for (unsigned n = 1; n <= n_max; ++n) table.push_back(table.back() * step);
  return table;
}

BigInt catalan_coefficient(unsigned n) {
  if (n % 2 != 0) return 0;
  const unsigned h = n / 2;
  BigInt num, a, b;
  mpz_fac_ui(num.get_mpz_t(), n);
  mpz_fac_ui(a.get_mpz_t(), h);
  mpz_fac_ui(b.get_mpz_t(), h + 1);
  return num / (a * b);
}

HeckeExpansion power_sum_in_lambda(unsigned k) {
  if (k == 0) throw std::invalid_argument("power_sum_in_lambda: k must be >= 1");
  const HeckeExpansion lambda = HeckeExpansion::basis(1);
  HeckeExpansion prev = HeckeExpansion::basis(0) * BigInt(2);
  HeckeExpansion cur = lambda;
  for (unsigned j = 1; j < k; ++j) {
    HeckeExpansion next = lambda * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

HeckeExpansion to_chebyshev_basis(const IntPolynomial& poly) {
  HeckeExpansion out;
  IntPolynomial rest = poly;
  while (!rest.is_zero()) {
    const auto deg = static_cast<unsigned>(rest.degree());
    BigInt lead = rest.coefficient(deg);
    BigInt scale = BigInt(1) << deg;
    if (!mpz_divisible_p(lead.get_mpz_t(), scale.get_mpz_t()))
      throw std::domain_error("to_chebyshev_basis: polynomial is not an integer combination of U_j");
    BigInt c = lead / scale;
    out.add_term(deg, c);
    rest -= chebyshev_u(deg) * c;
  }
  return out;
}

double lambda_at_angle(unsigned j, double theta) {
  // U_j(cos theta) by the three-term recurrence
  const double t = 2.0 * std::cos(theta);
  double prev = 1.0, cur = t;
  if (j == 0) return prev;
  for (unsigned k = 1; k < j; ++k) {
    const double next = t * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// ---- variance expansion -----------------------------------------------------

std::string_view to_string(LiftLabel label) {
  switch (label) {
    case LiftLabel::constant: return "const";
    case LiftLabel::sym4_pi: return "sym4pi";
    case LiftLabel::sym2_pi: return "sym2pi";
    case LiftLabel::sym2_sigma1_sym2_sigma2: return "sym2sigma1*sym2sigma2";
    case LiftLabel::sym2_sigma1: return "sym2sigma1";
    case LiftLabel::sym2_sigma2: return "sym2sigma2";
    case LiftLabel::sym2_pi_sigma1_sigma2: return "sym2pi*sigma1*sigma2";
    case LiftLabel::sigma1_sigma2: return "sigma1*sigma2";
    case LiftLabel::sym2_pi_sym2_sigma: return "sym2pi*sym2sigma";
    case LiftLabel::sym4_sigma: return "sym4sigma";
    case LiftLabel::sym2_sigma: return "sym2sigma";
  }
  return "?";
}

namespace {

// Tensor product of per-form Hecke bases, keyed by the exponent tuple.
using MultiIndex = std::vector<unsigned>;
using MultiExpansion = std::map<MultiIndex, BigInt>;

void add_multi(MultiExpansion& e, const MultiIndex& key, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = e.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) e.erase(it);
  }
}

MultiExpansion multi_product(const MultiExpansion& a, const MultiExpansion& b) {
  MultiExpansion out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      // product is a tensor of one-variable products
      std::vector<std::pair<MultiIndex, BigInt>> partial{{MultiIndex{}, ca * cb}};
      for (std::size_t v = 0; v < ka.size(); ++v) {
        std::vector<std::pair<MultiIndex, BigInt>> next;
        const HeckeExpansion prod = hecke_multiply(ka[v], kb[v]);
        for (const auto& [j, c] : prod.terms())
          for (const auto& [idx, pc] : partial) {
            MultiIndex k = idx;
            k.push_back(j);
            next.emplace_back(std::move(k), pc * c);
          }
        partial = std::move(next);
      }
      for (const auto& [k, c] : partial) add_multi(out, k, c);
    }
  return out;
}

MultiExpansion multi_basis(MultiIndex key) {
  MultiExpansion e;
  e.emplace(std::move(key), 1);
  return e;
}

MultiExpansion multi_sum(const MultiExpansion& a, const MultiExpansion& b) {
  MultiExpansion out = a;
  for (const auto& [k, c] : b) add_multi(out, k, c);
  return out;
}

LiftLabel label_for(bool equal_forms, const MultiIndex& k) {
  if (equal_forms) {
    const std::array<unsigned, 2> key{k[0], k[1]};
    if (key == std::array<unsigned, 2>{0, 0}) return LiftLabel::constant;
    if (key == std::array<unsigned, 2>{4, 0}) return LiftLabel::sym4_pi;
    if (key == std::array<unsigned, 2>{2, 0}) return LiftLabel::sym2_pi;
    if (key == std::array<unsigned, 2>{2, 2}) return LiftLabel::sym2_pi_sym2_sigma;
    if (key == std::array<unsigned, 2>{0, 4}) return LiftLabel::sym4_sigma;
    if (key == std::array<unsigned, 2>{0, 2}) return LiftLabel::sym2_sigma;
  } else {
    const std::array<unsigned, 3> key{k[0], k[1], k[2]};
    using K = std::array<unsigned, 3>;
    if (key == K{0, 0, 0}) return LiftLabel::constant;
    if (key == K{4, 0, 0}) return LiftLabel::sym4_pi;
    if (key == K{2, 0, 0}) return LiftLabel::sym2_pi;
    if (key == K{0, 2, 2}) return LiftLabel::sym2_sigma1_sym2_sigma2;
    if (key == K{0, 2, 0}) return LiftLabel::sym2_sigma1;
    if (key == K{0, 0, 2}) return LiftLabel::sym2_sigma2;
    if (key == K{2, 1, 1}) return LiftLabel::sym2_pi_sigma1_sigma2;
    if (key == K{0, 1, 1}) return LiftLabel::sigma1_sigma2;
  }
  throw std::logic_error("variance_expansion: term outside the lift vocabulary");
}

double evaluate_label(LiftLabel label, double tp, double t1, double t2) {
  switch (label) {
    case LiftLabel::constant: return 1.0;
    case LiftLabel::sym4_pi: return lambda_at_angle(4, tp);
    case LiftLabel::sym2_pi: return lambda_at_angle(2, tp);
    case LiftLabel::sym2_sigma1_sym2_sigma2: return lambda_at_angle(2, t1) * lambda_at_angle(2, t2);
    case LiftLabel::sym2_sigma1: return lambda_at_angle(2, t1);
    case LiftLabel::sym2_sigma2: return lambda_at_angle(2, t2);
    case LiftLabel::sym2_pi_sigma1_sigma2:
      return lambda_at_angle(2, tp) * lambda_at_angle(1, t1) * lambda_at_angle(1, t2);
    case LiftLabel::sigma1_sigma2: return lambda_at_angle(1, t1) * lambda_at_angle(1, t2);
    case LiftLabel::sym2_pi_sym2_sigma: return lambda_at_angle(2, tp) * lambda_at_angle(2, t1);
    case LiftLabel::sym4_sigma: return lambda_at_angle(4, t1);
    case LiftLabel::sym2_sigma: return lambda_at_angle(2, t1);
  }
  return 0.0;
}

}  // namespace

std::map<LiftLabel, BigInt> variance_expansion(bool equal_forms) {
  MultiExpansion inner;
  if (equal_forms) {
    inner = multi_sum(multi_product(multi_basis({1, 0}), multi_basis({1, 0})),
                      multi_product(multi_basis({0, 1}), multi_basis({0, 1})));
  } else {
    inner = multi_sum(multi_product(multi_basis({1, 0, 0}), multi_basis({1, 0, 0})),
                      multi_basis({0, 1, 1}));
  }
  const MultiExpansion square = multi_product(inner, inner);
  std::map<LiftLabel, BigInt> out;
  for (const auto& [k, c] : square) out[label_for(equal_forms, k)] += c;
  return out;
}

VarianceCheck variance_identity_at(bool equal_forms, double theta_pi, double theta_s1,
                                   double theta_s2) {
  const double lp = 2.0 * std::cos(theta_pi);
  const double l1 = 2.0 * std::cos(theta_s1);
  const double l2 = equal_forms ? l1 : 2.0 * std::cos(theta_s2);
  const double inner = equal_forms ? lp * lp + l1 * l1 : lp * lp + l1 * l2;
  VarianceCheck r;
  r.lhs = inner * inner;
  static const std::map<LiftLabel, BigInt> distinct = variance_expansion(false);
  static const std::map<LiftLabel, BigInt> equal = variance_expansion(true);
  for (const auto& [label, c] : equal_forms ? equal : distinct)
    r.rhs += c.get_d() * evaluate_label(label, theta_pi, theta_s1, theta_s2);
  return r;
}

}  // namespace tplab::hecke
