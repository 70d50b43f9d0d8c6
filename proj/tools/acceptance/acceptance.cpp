#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <stdexcept>

#include "tplab/hecke.hpp"
#include "tplab/kloosterman.hpp"
#include "tplab/philox.hpp"
#include "tplab/pipeline.hpp"
#include "tplab/primes.hpp"
#include "tplab/random_model.hpp"
#include "tplab/satake.hpp"
#include "tplab/transforms.hpp"

namespace tplab::acceptance {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;
using hecke::BigInt;
using hecke::LiftLabel;

template <class F>
CriterionResult timed(int id, std::string name, double limit, F&& body) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.time_limit = limit;
  const auto t0 = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.metrics["seconds"] = r.seconds;
  if (limit > 0.0 && r.seconds >= limit) {
    r.pass = false;
    r.detail += " [over time limit]";
  }
  return r;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// distinct stream ids per criterion so criteria do not share randomness
rng::CounterStream stream_for(const Options& o, int criterion) {
  return rng::CounterStream(o.seed, 0x4143000000000000ULL | static_cast<std::uint64_t>(criterion));
}

}  // namespace

CriterionResult hecke_coefficients(const Options&) {
  return timed(1, "hecke coefficient suite", 1.0, [](CriterionResult& r) {
    bool nonneg = true, sum_bound = true, zero_at_one = true, catalan = true;
    std::size_t checked = 0;
    for (unsigned d = 1; d <= 5; ++d) {
      const auto table = hecke::hecke_power_table(d, 10);
      if (table[1].coefficient(0) != 0) zero_at_one = false;
      BigInt bound = 1;  // (d+1)^{n-1}
      for (unsigned n = 1; n <= 10; ++n) {
        for (const auto& [j, c] : table[n].terms()) {
          if (c < 0) nonneg = false;
          ++checked;
        }
        if (table[n].coefficient_sum() > bound) sum_bound = false;
        bound *= (d + 1);
        if (d == 1 && n % 2 == 0 && table[n].coefficient(0) != hecke::catalan_coefficient(n)) catalan = false;
      }
    }
    r.pass = nonneg && sum_bound && zero_at_one && catalan;
    r.metrics = {{"nonnegative", nonneg}, {"sum_bound", sum_bound}, {"alpha_0_1_zero", zero_at_one},
                 {"catalan", catalan}, {"coefficients_checked", checked}};
    r.detail = "d<=5, n<=10: nonneg=" + std::to_string(nonneg) + " sum<=(d+1)^(n-1)=" + std::to_string(sum_bound) +
               " a(0,1)=0:" + std::to_string(zero_at_one) + " catalan=" + std::to_string(catalan);
  });
}

CriterionResult oracle_equivalence(const Options&) {
  return timed(2, "polynomial oracle equivalence", 5.0, [](CriterionResult& r) {
    std::size_t mismatches = 0, cases = 0;
    for (unsigned d = 1; d <= 4; ++d) {
      const auto table = hecke::hecke_power_table(d, 8);
      const auto u = hecke::chebyshev_u(d);
      hecke::IntPolynomial power = hecke::IntPolynomial::monomial(0);
      for (unsigned n = 1; n <= 8; ++n) {
        power = power * u;
        ++cases;
        if (!(hecke::to_chebyshev_basis(power) == table[n])) ++mismatches;
      }
    }
    r.pass = mismatches == 0;
    r.metrics = {{"cases", cases}, {"mismatches", mismatches}};
    r.detail = std::to_string(cases) + " expansions U_d^n, d<=4, n<=8; mismatches=" + std::to_string(mismatches);
  });
}

CriterionResult variance_identities(const Options& o) {
  return timed(3, "variance expansion identities", 0.0, [&](CriterionResult& r) {
    const std::map<LiftLabel, BigInt> distinct = {
        {LiftLabel::constant, 3},     {LiftLabel::sym4_pi, 1},
        {LiftLabel::sym2_pi, 3},      {LiftLabel::sym2_sigma1_sym2_sigma2, 1},
        {LiftLabel::sym2_sigma1, 1},  {LiftLabel::sym2_sigma2, 1},
        {LiftLabel::sym2_pi_sigma1_sigma2, 2}, {LiftLabel::sigma1_sigma2, 2}};
    const std::map<LiftLabel, BigInt> equal = {
        {LiftLabel::constant, 6},           {LiftLabel::sym4_pi, 1},    {LiftLabel::sym2_pi, 5},
        {LiftLabel::sym2_pi_sym2_sigma, 2}, {LiftLabel::sym4_sigma, 1}, {LiftLabel::sym2_sigma, 5}};
    const bool sym_distinct = hecke::variance_expansion(false) == distinct;
    const bool sym_equal = hecke::variance_expansion(true) == equal;

    auto s = stream_for(o, 3);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double a = std::numbers::pi * s.next_uniform();
      const double b = std::numbers::pi * s.next_uniform();
      const double c = std::numbers::pi * s.next_uniform();
      for (bool eq : {false, true}) {
        const auto v = hecke::variance_identity_at(eq, a, b, c);
        worst = std::max(worst, std::abs(v.lhs - v.rhs) / std::max(1.0, std::abs(v.lhs)));
      }
    }
    r.pass = sym_distinct && sym_equal && worst <= 1e-12;
    r.metrics = {{"symbolic_distinct", sym_distinct}, {"symbolic_equal", sym_equal}, {"max_residual", worst}, {"triples", 1000}};
    r.detail = "symbolic distinct=" + std::to_string(sym_distinct) + " equal=" + std::to_string(sym_equal) +
               ", 1000 triples max residual " + fmt("%.2e", worst);
  });
}

CriterionResult sym2_factorization(const Options& o) {
  return timed(4, "sym2 x sym2 factorization", 0.0, [&](CriterionResult& r) {
    static const std::uint64_t kPrimes[] = {2, 3, 5, 7, 11, 13};
    auto s = stream_for(o, 4);
    double worst_multiset = 0.0, worst_trace = 0.0, worst_dirichlet = 0.0;
    std::size_t failures = 0;
    for (int i = 0; i < 1000; ++i) {
      const std::uint64_t p = kPrimes[s.next_u32() % 6];
      const double theta = 2.0 * std::numbers::pi * s.next_uniform();
      const double sigma = (i % 2 == 0) ? 0.0 : satake::kKimSarnakExponent * s.next_signed();
      const satake::Complex alpha = std::polar(std::pow(static_cast<double>(p), sigma), theta);
      const auto chk = satake::factorization_check(p, alpha, 1e-12);
      if (!chk.holds) ++failures;
      worst_multiset = std::max(worst_multiset, chk.multiset_residual);
      worst_trace = std::max(worst_trace, chk.trace_residual);

      if (p > 3) continue;
      // coefficient cross-check at p^k, k <= 8
      const auto g = satake::GL2Local::unramified(p, alpha);
      const std::uint64_t N = static_cast<std::uint64_t>(std::pow(static_cast<double>(p), 8) + 0.5);
      auto series_of = [&](const satake::InverseFactor& local) {
        std::map<std::uint64_t, satake::InverseFactor> locals;
        for (auto q : primes::primes_up_to(N)) locals[q] = satake::InverseFactor{1.0};
        locals[p] = local;
        return satake::dirichlet_expand(locals, N);
      };
      const auto sym2 = satake::lift_sym(2, g);
      const auto lhs = series_of(satake::rankin_selberg(sym2, sym2).inverse_factor());
      const auto l4 = series_of(satake::lift_sym(4, g).inverse_factor());
      const auto l2 = series_of(sym2.inverse_factor());
      std::uint64_t pk = 1;
      for (unsigned k = 0; k <= 8; ++k, pk *= p) {
        satake::Complex conv = 0.0;
        double scale = 1.0;
        std::uint64_t pa = 1;
        for (unsigned a = 0; a <= k; ++a, pa *= p) {
          std::uint64_t pb = 1;
          for (unsigned b = 0; a + b <= k; ++b, pb *= p) {
            const auto t = l4(pa) * l2(pb);
            conv += t;
            scale += std::abs(t);
          }
        }
        worst_dirichlet = std::max(worst_dirichlet, std::abs(lhs(pk) - conv) / scale);
      }
    }
    r.pass = failures == 0 && worst_multiset <= 1e-12 && worst_trace <= 1e-12 && worst_dirichlet <= 1e-12;
    r.metrics = {{"parameters", 1000},
                 {"failures", failures},
                 {"max_multiset_residual", worst_multiset},
                 {"max_trace_residual", worst_trace},
                 {"max_dirichlet_residual", worst_dirichlet}};
    r.detail = "1000 parameters: multiset " + fmt("%.2e", worst_multiset) + ", trace " + fmt("%.2e", worst_trace) +
               ", Dirichlet p^k (k<=8) " + fmt("%.2e", worst_dirichlet);
  });
}

CriterionResult weil_bound(const Options&) {
  return timed(5, "Kloosterman sums and the Weil bound", 10.0, [](CriterionResult& r) {
    std::size_t violations = 0, asymmetric = 0, checked = 0;
    double min_margin = 1e300;
    for (std::uint64_t c = 1; c <= 500; ++c) {
      for (std::uint64_t m = 1; m <= 10; ++m) {
        for (std::uint64_t n = 1; n <= 10; ++n) {
          const auto w = kloosterman::weil_bound_check({m, n, c});
          ++checked;
          if (!w.holds) ++violations;
          min_margin = std::min(min_margin, w.margin);
          if (n > m) continue;
          if (kloosterman::residue_histogram({m, n, c}) != kloosterman::residue_histogram({n, m, c})) ++asymmetric;
        }
      }
    }
    r.pass = violations == 0 && asymmetric == 0;
    r.metrics = {{"sums", checked}, {"violations", violations}, {"asymmetric", asymmetric}, {"min_margin", min_margin}};
    r.detail = std::to_string(checked) + " sums, c<=500, m,n<=10: violations=" + std::to_string(violations) +
               " asymmetric=" + std::to_string(asymmetric) + " min margin " + fmt("%.3g", min_margin);
  });
}

CriterionResult h_plus_asymptotic(const Options&) {
  return timed(6, "h+ small-x asymptotic", 0.0, [](CriterionResult& r) {
    constexpr int kGrid = 30;
    double constant = 0.0, worst_limit = 0.0;
    json per_r = json::array();
    for (double rr : {3.0, 5.0, 10.0}) {
      const transforms::TestFn f(rr);
      double c_r = 0.0;
      for (int i = 0; i < kGrid; ++i) {
        const double x = 1e-4 * std::pow(1.9 / 1e-4, static_cast<double>(i) / (kGrid - 1));
        const auto h = transforms::h_plus(f, x);
        const double res = std::abs(h.value - transforms::h_plus_linear(f, x)) / (std::sqrt(rr) * x * x);
        c_r = std::max(c_r, res);
      }
      const double x0 = 1e-4;
      const double slope = transforms::h_plus(f, x0).value / x0;
      const double target = 1.0 / std::cos(std::numbers::pi / (2.0 * rr));
      const double rel = std::abs(slope - target) / target;
      worst_limit = std::max(worst_limit, rel);
      constant = std::max(constant, c_r);
      per_r.push_back({{"r", rr}, {"residual_constant", c_r}, {"slope_at_1e-4", slope}, {"limit", target}});
    }
    r.pass = constant <= 5.0 && worst_limit < 5e-5;
    r.metrics = {{"residual_constant", constant}, {"max_slope_relative_error", worst_limit}, {"per_r", per_r}};
    r.detail = "sup |h+ - x/cos(pi/2r)|/(sqrt(r) x^2) = " + fmt("%.4f", constant) + ", slope rel. error at 1e-4 " +
               fmt("%.2e", worst_limit);
  });
}

std::vector<GeometricConfig> geometric_configs() {
  static const std::uint64_t kN[] = {101, 151, 199, 251, 307, 353, 401, 449, 503, 557,
                                     601, 653, 701, 751, 809, 853, 907, 953, 991, 1009};
  static const std::pair<std::uint64_t, std::uint64_t> kMN[] = {{1, 1}, {1, 2}, {2, 3}, {1, 3}, {2, 2}};
  static const double kR[] = {3.0, 5.0, 10.0};
  std::vector<GeometricConfig> out;
  for (std::size_t i = 0; i < 20; ++i) out.push_back({kN[i], kMN[i % 5].first, kMN[i % 5].second, kR[i % 3]});
  return out;
}

CriterionResult geometric_diagonal(const Options& o) {
  return timed(7, "Kuznetsov geometric-side diagonal", 120.0, [&](CriterionResult& r) {
    json rows = json::array();
    std::size_t failures = 0;
    double worst = 0.0;
    for (const auto& c : geometric_configs()) {
      transforms::GeometricOptions g;
      g.c_max = o.geometric_c_max;
      g.c_cap = o.geometric_c_max;
      g.threads = o.threads;
      const auto res = transforms::geometric_side(c.N, c.m, c.n, transforms::TestFn(c.r), g);
      const double allowed = 10.0 * std::sqrt(c.r) * std::sqrt(static_cast<double>(c.m * c.n) / c.N);
      const double dev = std::abs(res.value - res.diagonal);
      worst = std::max(worst, dev / allowed);
      if (!(dev <= allowed)) ++failures;
      rows.push_back({{"N", c.N}, {"m", c.m}, {"n", c.n}, {"r", c.r}, {"value", res.value}, {"diagonal", res.diagonal},
                      {"deviation", dev}, {"allowed", allowed}, {"tail_estimate", res.tail_estimate},
                      {"tail_target_met", res.tail_target_met}, {"c_max", res.c_max}});
    }
    r.pass = failures == 0;
    r.metrics = {{"configs", rows}, {"failures", failures}, {"max_deviation_over_allowed", worst},
                 {"c_max", o.geometric_c_max}};
    r.detail = "20 configs N in [101,1009], c_max=" + std::to_string(o.geometric_c_max) +
               ": max deviation/allowed " + fmt("%.3f", worst) + ", failures=" + std::to_string(failures);
  });
}

CriterionResult random_model(const Options& o) {
  return timed(8, "random model Monte Carlo", 300.0, [&](CriterionResult& r) {
    model::ModelConfig cfg;
    cfg.x = 1e5;
    cfg.samples = o.mc_samples;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    model::SimulationOptions so;
    so.k_max = 4;
    const auto rep = model::simulate(cfg, so);
    const bool ks_ok = rep.ks_distance < 0.01;
    const bool frac_ok = std::abs(rep.frac_z) <= 3.0;
    bool moments_ok = true;
    json moments = json::array();
    for (const auto& m : rep.moments) {
      const double tol = m.k <= 2 ? 0.05 : 0.10;
      const bool ok = std::abs(m.ratio - 1.0) <= tol;
      moments_ok = moments_ok && ok;
      moments.push_back({{"k", m.k}, {"empirical", m.empirical.value}, {"standard_error", m.empirical.standard_error},
                         {"gaussian", m.gaussian}, {"exact_model", m.exact_model}, {"ratio", m.ratio},
                         {"exact_ratio", m.empirical.value / m.exact_model}, {"tolerance", tol}, {"pass", ok}});
    }
    r.pass = ks_ok && frac_ok && moments_ok;
    r.metrics = {{"samples", rep.samples},
                 {"primes", rep.n_primes},
                 {"sigma2", rep.sigma2},
                 {"ks_distance", rep.ks_distance},
                 {"frac_moment", rep.frac_moment.value},
                 {"frac_standard_error", rep.frac_moment.standard_error},
                 {"frac_lognormal", rep.frac_lognormal},
                 {"frac_exact_model", rep.frac_exact_model},
                 {"frac_z", rep.frac_z},
                 {"moments", moments}};
    std::string ratios;
    for (const auto& m : rep.moments) ratios += (ratios.empty() ? "" : ",") + fmt("%.3f", m.ratio);
    r.detail = "KS " + fmt("%.4f", rep.ks_distance) + (ks_ok ? " ok" : " FAIL") + "; E e^{X/2} z=" +
               fmt("%.2f", rep.frac_z) + (frac_ok ? " ok" : " FAIL") + "; moment ratios k=1..4 " + ratios +
               (moments_ok ? " ok" : " FAIL");
  });
}

CriterionResult exponent_arithmetic(const Options&) {
  return timed(9, "exponent arithmetic", 0.0, [](CriterionResult& r) {
    const auto d = pipeline::mean_variance_targets(false);
    const auto e = pipeline::mean_variance_targets(true);
    const bool exact = d.exponent == mpq_class(-3, 8) && e.exponent == mpq_class(-1, 4);
    json rows = json::array();
    bool decreasing = true, ratio_ok = true;
    double prev_defect = 1e300;
    std::string seq, rat;
    for (double q : {1e6, 1e9, 1e12}) {
      const auto rep = pipeline::range_table_bound(pipeline::BoundConfig::from_q(q, 0.005, false));
      const double defect = std::abs(rep.exponent - rep.target_exponent);
      if (!(defect < prev_defect)) decreasing = false;
      prev_defect = defect;
      if (!(rep.ratio >= 0.1 && rep.ratio <= 10.0)) ratio_ok = false;
      rows.push_back({{"q", q}, {"exponent", rep.exponent}, {"defect", defect}, {"ratio", rep.ratio},
                      {"main_term_exponent", rep.main_term_exponent}, {"final_bound", rep.final_bound}});
      seq += (seq.empty() ? "" : ",") + fmt("%.3f", rep.exponent);
      rat += (rat.empty() ? "" : ",") + fmt("%.3g", rep.ratio);
    }
    r.pass = exact && decreasing && ratio_ok;
    r.metrics = {{"exact_targets", exact}, {"defect_decreasing", decreasing}, {"ratio_in_range", ratio_ok}, {"sweep", rows}};
    r.detail = std::string("targets -3/8,-1/4 ") + (exact ? "exact" : "WRONG") + "; exponents q=1e6,1e9,1e12: " + seq +
               (decreasing ? " (defect decreasing)" : " (defect not decreasing)") + "; ratios " + rat +
               (ratio_ok ? "" : " outside [0.1,10]");
  });
}

CriterionResult gaussian_and_factorials(const Options& o) {
  return timed(10, "Gaussian integral and factorial bound", 0.0, [&](CriterionResult& r) {
    auto s = stream_for(o, 10);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double alpha = 0.1 + 9.9 * s.next_uniform();
      const double beta = 10.0 * s.next_signed();
      worst = std::max(worst, pipeline::gaussian_integral_checked(alpha, beta).relative_difference);
    }
    const auto st = pipeline::stirling_factorial_check(100);
    r.pass = worst <= 1e-10 && st.holds;
    r.metrics = {{"max_relative_difference", worst}, {"factorial_bound_holds", st.holds}, {"ratio_monotone", st.monotone}};
    r.detail = "100 (alpha,beta): max rel. diff " + fmt("%.2e", worst) + "; (2k)!/k! <= sqrt2 (4k/e)^k for k<=100: " +
               (st.holds ? "holds" : "FAILS");
  });
}

CriterionResult run_one(int id, const Options& o) {
  static const Criterion kAll[] = {hecke_coefficients, oracle_equivalence, variance_identities, sym2_factorization,
                                   weil_bound,         h_plus_asymptotic,  geometric_diagonal,  random_model,
                                   exponent_arithmetic, gaussian_and_factorials};
  if (id < 1 || id > 10) throw std::invalid_argument("acceptance criterion id must be 1..10");
  return kAll[id - 1](o);
}

std::vector<CriterionResult> run_all(const Options& o) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 10; ++id) {
    if (!o.only.empty() && !o.only.count(id)) continue;
    out.push_back(run_one(id, o));
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  char head[128];
  std::snprintf(head, sizeof head, "[%s] %2d %-40s %8.2fs  ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
  return head + r.detail;
}

nlohmann::json to_json(const CriterionResult& r) {
  return {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"seconds", r.seconds},
          {"time_limit", r.time_limit}, {"detail", r.detail}, {"metrics", r.metrics}};
}

}  // namespace tplab::acceptance
