#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "output.hpp"
#include "tplab/hecke.hpp"
#include "tplab/kloosterman.hpp"
#include "tplab/parallel.hpp"
#include "tplab/pipeline.hpp"
#include "tplab/primes.hpp"
#include "tplab/random_model.hpp"
#include "tplab/satake.hpp"
#include "tplab/transforms.hpp"

using tplab::cli::ojson;

namespace {

struct Run {
  tplab::cli::Manifest manifest;
  ojson result;
  int exit_code = 0;
};

ojson big(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

ojson complex_json(std::complex<double> z) { return ojson::array({z.real(), z.imag()}); }

ojson complex_rows(const std::vector<std::complex<double>>& v, const char* index) {
  ojson rows = ojson::array();
  for (std::size_t k = 0; k < v.size(); ++k) rows.push_back({{index, k}, {"re", v[k].real()}, {"im", v[k].imag()}});
  return rows;
}

tplab::satake::GL2Local tempered_from_lambda(std::uint64_t p, double lambda) {
  return tplab::satake::GL2Local::tempered(p, std::acos(std::clamp(lambda / 2.0, -1.0, 1.0)));
}

// hecke table --d --n
void add_hecke(CLI::App& app, Run& run, std::function<void()>& action) {
  auto* hecke = app.add_subcommand("hecke", "Hecke-relation coefficient tables");
  hecke->require_subcommand(1);
  auto* table = hecke->add_subcommand("table", "coefficients of lambda(p^d)^n in the lambda(p^j) basis");
  static unsigned d = 1, n = 4;
  table->add_option("--d", d, "index d")->required()->check(CLI::Range(1u, 64u));
  table->add_option("--n", n, "largest power n")->required()->check(CLI::Range(1u, 64u));
  table->callback([&] {
    action = [&] {
      run.manifest.command = "hecke table";
      run.manifest.config = {{"d", d}, {"n", n}};
      const auto t = tplab::hecke::hecke_power_table(d, n);
      ojson rows = ojson::array();
      for (unsigned k = 1; k <= n; ++k)
        for (const auto& [j, c] : t[k].terms()) rows.push_back({{"d", d}, {"n", k}, {"j", j}, {"alpha", big(c)}});
      run.result = {{"d", d}, {"n", n}, {"rows", rows}};
    };
  });
}

// lfactor triple / dirichlet
void add_lfactor(CLI::App& app, Run& run, std::function<void()>& action) {
  auto* lf = app.add_subcommand("lfactor", "local factors and Dirichlet coefficients");
  lf->require_subcommand(1);

  auto* triple = lf->add_subcommand("triple", "inverse local factor of the triple product at p");
  static std::string kase = "unram";
  static std::uint64_t p = 2;
  static std::vector<double> theta{0.3, 1.1, 2.0};
  static std::vector<int> sign{1, 1, 1};
  triple->add_option("--case", kase, "ramification case")->check(CLI::IsMember({"unram", "ram1", "ram2", "ram3"}));
  triple->add_option("--p", p, "prime")->required();
  triple->add_option("--theta", theta, "Satake angles of the unramified forms")->expected(1, 3);
  triple->add_option("--sign", sign, "signs of the special forms")->expected(1, 3);
  triple->callback([&] {
    action = [&] {
      if (!tplab::primes::is_prime(p)) throw std::invalid_argument("--p must be prime");
      run.manifest.command = "lfactor triple";
      run.manifest.config = {{"case", kase}, {"p", p}, {"theta", theta}, {"sign", sign}};
      const int n_special = kase == "unram" ? 0 : kase == "ram1" ? 1 : kase == "ram2" ? 2 : 3;
      std::vector<tplab::satake::GL2Local> g;
      for (int i = 0; i < 3; ++i) {
        if (i >= 3 - n_special) {
          const int s = sign.at(std::min<std::size_t>(i - (3 - n_special), sign.size() - 1));
          g.push_back(tplab::satake::GL2Local::special(p, s));
        } else {
          g.push_back(tplab::satake::GL2Local::tempered(p, theta.at(std::min<std::size_t>(i, theta.size() - 1))));
        }
      }
      const auto f = tplab::satake::triple_local_factor(g[0], g[1], g[2]);
      ojson roots = ojson::array();
      for (auto z : f.roots) roots.push_back(complex_json(z));
      run.result = {{"case", kase}, {"p", p}, {"degree", f.coefficients.size() - 1}, {"roots", roots},
                    {"rows", complex_rows(f.coefficients, "k")}};
    };
  });

  auto* dir = lf->add_subcommand("dirichlet", "Dirichlet coefficients of a lift of Sato-Tate forms");
  static std::uint64_t N = 100, seed = 7;
  static std::string lift = "std";
  dir->add_option("--N", N, "number of coefficients")->required()->check(CLI::Range(std::uint64_t{2}, std::uint64_t{10000000}));
  dir->add_option("--lift", lift, "std, sym2, sym4, sym2xsym2 or triple")
      ->check(CLI::IsMember({"std", "sym2", "sym4", "sym2xsym2", "triple"}));
  dir->add_option("--seed", seed, "seed of the Sato-Tate forms");
  dir->callback([&] {
    action = [&] {
      using namespace tplab::satake;
      run.manifest.command = "lfactor dirichlet";
      run.manifest.config = {{"N", N}, {"lift", lift}, {"seed", seed}};
      run.manifest.seed = seed;
      run.manifest.has_seed = true;
      const auto table = tplab::primes::primes_up_to(N);
      std::vector<tplab::model::FormModel> forms;
      for (std::uint64_t id = 0; id < 3; ++id) forms.push_back(tplab::model::FormModel::sato_tate(table, seed, id));
      std::map<std::uint64_t, InverseFactor> locals;
      for (std::size_t i = 0; i < table.size(); ++i) {
        const std::uint64_t q = table[i];
        const auto g0 = tempered_from_lambda(q, forms[0].lambdas()[i]);
        if (lift == "std") {
          locals[q] = satake_of(g0).inverse_factor();
        } else if (lift == "sym2") {
          locals[q] = lift_sym(2, g0).inverse_factor();
        } else if (lift == "sym4") {
          locals[q] = lift_sym(4, g0).inverse_factor();
        } else if (lift == "sym2xsym2") {
          const auto s2 = lift_sym(2, g0);
          locals[q] = rankin_selberg(s2, s2).inverse_factor();
        } else {
          const auto g1 = tempered_from_lambda(q, forms[1].lambdas()[i]);
          const auto g2 = tempered_from_lambda(q, forms[2].lambdas()[i]);
          locals[q] = triple_local_factor(g0, g1, g2).coefficients;
        }
      }
      const auto series = dirichlet_expand(locals, N);
      ojson rows = ojson::array();
      for (std::uint64_t n = 1; n <= N; ++n) rows.push_back({{"n", n}, {"re", series(n).real()}, {"im", series(n).imag()}});
      run.manifest.format = run.manifest.format;
      run.result = {{"lift", lift}, {"N", N}, {"degree", series.degree()}, {"rows", rows}};
    };
  });
}

void add_kloosterman(CLI::App& app, Run& run, std::function<void()>& action) {
  auto* k = app.add_subcommand("kloosterman", "Kloosterman sum S(m, n; c) and its Weil bound");
  static std::uint64_t m = 1, n = 1, c = 7;
  k->add_option("--m", m, "m")->required()->check(CLI::PositiveNumber);
  k->add_option("--n", n, "n")->required()->check(CLI::PositiveNumber);
  k->add_option("--c", c, "modulus")->required()->check(CLI::PositiveNumber);
  k->callback([&] {
    action = [&] {
      run.manifest.command = "kloosterman";
      run.manifest.config = {{"m", m}, {"n", n}, {"c", c}};
      const auto direct = tplab::kloosterman::kloosterman_direct({m, n, c});
      const auto w = tplab::kloosterman::weil_bound_check({m, n, c});
      run.result = {{"m", m}, {"n", n}, {"c", c}, {"value", direct.value}, {"imag_residual", direct.imag_residual},
                    {"factored_value", tplab::kloosterman::kloosterman_factored({m, n, c})},
                    {"weil_bound", w.bound}, {"margin", w.margin}, {"holds", w.holds}};
    };
  });
}

void add_transforms(CLI::App& app, Run& run, std::function<void()>& action) {
  auto* t = app.add_subcommand("transforms", "Kuznetsov integral transforms");
  t->require_subcommand(1);
  auto* hp = t->add_subcommand("hplus", "h+(x) for h(t) = 1/cosh(pi t/r)");
  static double r = 3.0, x = 1.0;
  hp->add_option("--r", r, "test-function width r >= 3")->required();
  hp->add_option("--x", x, "argument 0 < x < 2")->required();
  hp->callback([&] {
    action = [&] {
      run.manifest.command = "transforms hplus";
      run.manifest.config = {{"r", r}, {"x", x}};
      const tplab::transforms::TestFn f(r);
      const auto h = tplab::transforms::h_plus(f, x);
      const double lin = tplab::transforms::h_plus_linear(f, x);
      const double scale = std::sqrt(r) * x * x;
      run.result = {{"r", r}, {"x", x}, {"value", h.value}, {"error_estimate", h.abs_error_estimate},
                    {"linear_term", lin}, {"bound", scale}, {"residual_over_bound", std::abs(h.value - lin) / scale},
                    {"h0", tplab::transforms::h0(f).value}};
    };
  });

  auto* geo = t->add_subcommand("geometric", "geometric side of the Kuznetsov formula");
  static std::uint64_t N = 101, m = 1, n = 1, c_max = 20000, c_cap = 0;
  static double gr = 3.0;
  geo->add_option("--N", N, "square-free level")->required();
  geo->add_option("--m", m, "m")->required();
  geo->add_option("--n", n, "n")->required();
  geo->add_option("--r", gr, "test-function width r >= 3")->required();
  geo->add_option("--c-max", c_max, "Kloosterman c-sum cutoff");
  geo->add_option("--c-cap", c_cap, "largest cutoff reached by doubling (default: c-max)");
  geo->callback([&] {
    action = [&] {
      run.manifest.command = "transforms geometric";
      tplab::transforms::GeometricOptions o;
      o.c_max = c_max;
      o.c_cap = c_cap ? c_cap : c_max;
      o.threads = run.manifest.threads;
      run.manifest.config = {{"N", N}, {"m", m}, {"n", n}, {"r", gr}, {"c_max", o.c_max}, {"c_cap", o.c_cap}};
      const auto g = tplab::transforms::geometric_side(N, m, n, tplab::transforms::TestFn(gr), o);
      run.result = {{"value", g.value},
                    {"error_estimate", g.abs_error_estimate},
                    {"bound", g.bound},
                    {"diagonal", g.diagonal},
                    {"kloosterman_part", g.kloosterman_part},
                    {"h0", g.h0},
                    {"quadrature_error", g.quadrature_error},
                    {"linearization_error", g.linearization_error},
                    {"tail_estimate", g.tail_estimate},
                    {"tail_target", g.tail_target},
                    {"tail_target_met", g.tail_target_met},
                    {"c_max", g.c_max},
                    {"c_exact", g.c_exact},
                    {"remainder_constant", g.remainder_constant}};
    };
  });
}

ojson report_json(const tplab::model::SimulationReport& r) {
  ojson moments = ojson::array();
  for (const auto& m : r.moments)
    moments.push_back({{"k", m.k}, {"empirical", m.empirical.value}, {"standard_error", m.empirical.standard_error},
                       {"gaussian", m.gaussian}, {"exact_model", m.exact_model}, {"ratio", m.ratio},
                       {"ratio_standard_error", m.ratio_se}});
  const auto& mv = r.mean_variance;
  return {{"samples", r.samples},
          {"primes", r.n_primes},
          {"mu", r.mu},
          {"sigma2", r.sigma2},
          {"mean_variance",
           {{"loglog_x", mv.loglog_x}, {"mu_leading", mv.mu_leading}, {"var_leading", mv.var_leading},
            {"mu_correction", mv.mu_correction}, {"mu_refined", mv.mu_refined}, {"var_empirical", mv.var_empirical},
            {"var_correction", mv.var_correction}}},
          {"mean", r.mean.value},
          {"mean_standard_error", r.mean.standard_error},
          {"variance", r.variance.value},
          {"variance_standard_error", r.variance.standard_error},
          {"ks_distance", r.ks_distance},
          {"exponent", r.exponent},
          {"frac_moment", r.frac_moment.value},
          {"frac_standard_error", r.frac_moment.standard_error},
          {"frac_lognormal", r.frac_lognormal},
          {"frac_exact_model", r.frac_exact_model},
          {"frac_ratio", r.frac_ratio},
          {"frac_z", r.frac_z},
          {"moments", moments}};
}

void add_simulate(CLI::App& app, Run& run, std::function<void()>& action) {
  auto* s = app.add_subcommand("simulate", "Monte Carlo of the random model for log L");
  static tplab::model::ModelConfig cfg;
  static std::string mode = "plain", raw_csv;
  static tplab::model::SimulationOptions so;
  s->add_option("--x", cfg.x, "prime cutoff");
  s->add_option("--samples", cfg.samples, "number of samples");
  s->add_option("--seed", cfg.seed, "seed");
  s->add_flag("--equal-forms", cfg.equal_forms, "f1 = f2");
  s->add_option("--weight-mode", mode, "plain or smoothed")->check(CLI::IsMember({"plain", "smoothed"}));
  s->add_option("--exponent", so.exponent, "t in E[e^{tX}]");
  s->add_option("--k-max", so.k_max, "largest moment index (moments of order 2k)")->check(CLI::Range(1u, 6u));
  s->add_option("--raw-csv", raw_csv, "write per-sample S values as CSV");
  s->callback([&] {
    action = [&] {
      run.manifest.command = "simulate";
      cfg.weight_mode = tplab::model::weight_mode_from_string(mode);
      cfg.threads = run.manifest.threads;
      run.manifest.seed = cfg.seed;
      run.manifest.has_seed = true;
      run.manifest.config = {{"x", cfg.x}, {"samples", cfg.samples}, {"seed", cfg.seed}, {"equal_forms", cfg.equal_forms},
                             {"weight_mode", mode}, {"exponent", so.exponent}, {"k_max", so.k_max}};
      so.keep_raw = !raw_csv.empty();
      const auto rep = tplab::model::simulate(cfg, so);
      run.result = report_json(rep);
      if (!raw_csv.empty()) {
        std::ofstream out(raw_csv);
        if (!out) throw std::runtime_error("cannot open " + raw_csv);
        out << "sample,S\n";
        for (std::size_t i = 0; i < rep.raw.size(); ++i) out << i << "," << tplab::cli::format_double(rep.raw[i]) << "\n";
        run.result["raw_csv"] = raw_csv;
      }
    };
  });
}

ojson range_report_json(const tplab::pipeline::RangeReport& rep) {
  ojson ranges = ojson::array();
  for (const auto& r : rep.ranges) {
    ojson rec = {{"name", r.name}, {"V_lo", r.interval.lo}, {"V_hi", r.interval.hi}, {"empty", r.interval.empty()},
                 {"integral", r.integral}, {"bound", r.contribution}, {"log_bound", r.log_contribution}};
    if (r.has_choice) {
      const auto& c = r.representative;
      rec["choice"] = {{"V", c.V}, {"k", c.k}, {"log_x", c.log_x}, {"log_z", c.log_z},
                       {"flag_k_log_z", c.flag_k_log_z}, {"flag_k_log_x", c.flag_k_log_x},
                       {"flag_x_large", c.flag_x_large}, {"admissible", c.admissible()}};
    } else {
      rec["choice"] = nullptr;
    }
    ranges.push_back(rec);
  }
  const auto& c = rep.config;
  return {{"config",
           {{"log_q", c.log_q}, {"q", std::exp(c.log_q)}, {"epsilon", c.epsilon}, {"A", c.A}, {"C", c.C}, {"B", c.B},
            {"c_eps", c.c_eps()}, {"equal_forms", c.equal_forms}}},
          {"loglog_q", rep.loglog_q},
          {"Delta", rep.Delta},
          {"mu_q", rep.mu_q},
          {"var_q", rep.var_q},
          {"ranges", ranges},
          {"final_bound", rep.final_bound},
          {"normalization", rep.normalization},
          {"ratio", rep.ratio},
          {"exponent", rep.exponent},
          {"main_term_exponent", rep.main_term_exponent},
          {"target_exponent", rep.target_exponent},
          {"small_fraction", rep.small_fraction},
          {"all_choices_admissible", rep.bulk_admissible}};
}

void add_pipeline(CLI::App& app, Run& run, std::function<void()>& action) {
  auto* p = app.add_subcommand("pipeline", "range table and exponent of the conditional bound");
  static std::vector<double> qs{1e12};
  static tplab::pipeline::BoundConfig base;
  p->add_option("--q", qs, "level scale(s); several values give a sweep")->expected(1, -1);
  p->add_option("--epsilon", base.epsilon, "epsilon in (0, 1/100)");
  p->add_flag("--equal-forms", base.equal_forms, "pi1 = pi2");
  p->add_option("--A", base.A, "GRH constant A");
  p->add_option("--C", base.C, "range-splitting constant C");
  p->add_option("--B", base.B, "mean constant B");
  p->add_option("--c-eps-factor", base.c_eps_factor, "c(eps) = factor * eps");
  p->callback([&] {
    action = [&] {
      run.manifest.command = "pipeline";
      run.manifest.config = {{"q", qs}, {"epsilon", base.epsilon}, {"equal_forms", base.equal_forms}, {"A", base.A},
                             {"C", base.C}, {"B", base.B}, {"c_eps_factor", base.c_eps_factor}};
      const auto t = tplab::pipeline::mean_variance_targets(base.equal_forms);
      ojson targets = {{"mu_coefficient", t.mu_coefficient.get_str()}, {"var_coefficient", t.var_coefficient.get_str()},
                       {"exponent", t.exponent.get_str()}};
      ojson reports = ojson::array(), rows = ojson::array();
      for (double q : qs) {
        auto cfg = base;
        cfg.log_q = std::log(q);
        const auto rep = tplab::pipeline::range_table_bound(cfg);
        rows.push_back({{"q", q}, {"exponent", rep.exponent}, {"ratio", rep.ratio},
                        {"main_term_exponent", rep.main_term_exponent}});
        reports.push_back(range_report_json(rep));
      }
      if (qs.size() == 1) {
        run.result = reports[0];
        run.result["targets"] = targets;
        run.result["rows"] = rows;
      } else {
        run.result = {{"targets", targets}, {"reports", reports}, {"rows", rows}};
      }
    };
  });
}

void add_primes(CLI::App& app, Run& run, std::function<void()>& action) {
  auto* p = app.add_subcommand("primes", "prime counting helpers");
  p->require_subcommand(1);
  auto* count = p->add_subcommand("count", "pi(x) and sum_{p<=x} 1/p");
  static std::uint64_t x = 100;
  count->add_option("--x", x, "limit")->required()->check(CLI::Range(std::uint64_t{2}, tplab::primes::kMaxSieveLimit));
  count->callback([&] {
    action = [&] {
      run.manifest.command = "primes count";
      run.manifest.config = {{"x", x}};
      const auto t = tplab::primes::primes_up_to(x);
      const auto m = tplab::primes::mertens_sum(x);
      run.result = {{"x", x}, {"count", t.size()}, {"mertens_sum", m.sum}, {"fitted_constant", m.fitted_constant},
                    {"approximation", m.approximation}};
    };
  });
}

void add_verify(CLI::App& app, Run& run, std::function<void()>& action) {
  auto* v = app.add_subcommand("verify-all", "run the acceptance suite");
  static tplab::acceptance::Options opts;
  static std::vector<int> only;
  v->add_option("--seed", opts.seed, "seed");
  v->add_option("--samples", opts.mc_samples, "Monte Carlo samples");
  v->add_option("--c-max", opts.geometric_c_max, "Kloosterman c-sum cutoff");
  v->add_option("--only", only, "criterion ids")->check(CLI::Range(1, 10));
  v->callback([&] {
    action = [&] {
      run.manifest.command = "verify-all";
      opts.threads = run.manifest.threads;
      opts.only = {only.begin(), only.end()};
      run.manifest.seed = opts.seed;
      run.manifest.has_seed = true;
      run.manifest.config = {{"seed", opts.seed}, {"samples", opts.mc_samples}, {"c_max", opts.geometric_c_max},
                             {"only", only}};
      ojson criteria = ojson::array(), rows = ojson::array();
      bool all = true;
      for (int id = 1; id <= 10; ++id) {
        if (!opts.only.empty() && !opts.only.count(id)) continue;
        const auto r = tplab::acceptance::run_one(id, opts);
        std::cerr << tplab::acceptance::format_line(r) << std::endl;
        all = all && r.pass;
        criteria.push_back(ojson::parse(tplab::acceptance::to_json(r).dump()));
        rows.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"seconds", r.seconds}});
      }
      run.result = {{"all_pass", all}, {"criteria", criteria}, {"rows", rows}};
      run.exit_code = all ? 0 : 1;
    };
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tplab: triple product L-function toolkit"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  Run run;
  std::function<void()> action;
  std::string out, format = "json";
  unsigned threads = 0;
  app.add_option("--out", out, "write output to this file instead of standard output");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", threads, "worker threads (default: TPLAB_THREADS or hardware)");
  app.fallthrough();

  add_hecke(app, run, action);
  add_lfactor(app, run, action);
  add_kloosterman(app, run, action);
  add_transforms(app, run, action);
  add_simulate(app, run, action);
  add_pipeline(app, run, action);
  add_primes(app, run, action);
  add_verify(app, run, action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  run.manifest.argv.assign(argv, argv + argc);
  run.manifest.threads = tplab::resolve_threads(threads);
  run.manifest.out_path = out;
  run.manifest.format = format;
  run.manifest.started = std::chrono::system_clock::now();
  try {
    if (!action) throw std::logic_error("no command selected");
    action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::string text;
  if (format == "csv") {
    text = tplab::cli::to_csv(run.result);
  } else {
    ojson doc;
    doc["manifest"] = run.manifest.to_json(std::chrono::system_clock::now());
    doc["result"] = run.result;
    text = tplab::cli::dump17(doc) + "\n";
  }
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "error: cannot open " << out << "\n";
      return 2;
    }
    f << text;
  }
  return run.exit_code;
}
