#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

namespace tplab::acceptance {

struct Options {
  std::uint64_t seed = 7;
  unsigned threads = 0;
  std::uint64_t mc_samples = 1000000;
  std::uint64_t geometric_c_max = 20000;
  std::set<int> only;  // empty: all ten
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  double time_limit = 0.0;  // 0: none
  std::string detail;
  nlohmann::json metrics;
};

using Criterion = CriterionResult (*)(const Options&);

CriterionResult hecke_coefficients(const Options& o);
CriterionResult oracle_equivalence(const Options& o);
CriterionResult variance_identities(const Options& o);
CriterionResult sym2_factorization(const Options& o);
CriterionResult weil_bound(const Options& o);
CriterionResult h_plus_asymptotic(const Options& o);
CriterionResult geometric_diagonal(const Options& o);
CriterionResult random_model(const Options& o);
CriterionResult exponent_arithmetic(const Options& o);
CriterionResult gaussian_and_factorials(const Options& o);

CriterionResult run_one(int id, const Options& o);
std::vector<CriterionResult> run_all(const Options& o);

std::string format_line(const CriterionResult& r);
nlohmann::json to_json(const CriterionResult& r);

// The fixed configuration set of the geometric-side criterion.
struct GeometricConfig {
  std::uint64_t N, m, n;
  double r;
};
std::vector<GeometricConfig> geometric_configs();

}  // namespace tplab::acceptance
