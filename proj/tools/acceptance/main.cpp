#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Runs the ten acceptance criteria and prints one line per criterion"};
  tplab::acceptance::Options opts;
  std::vector<int> only;
  std::string json_out;
  app.add_option("--seed", opts.seed, "RNG seed");
  app.add_option("--threads", opts.threads, "worker threads (0: TPLAB_THREADS or hardware)");
  app.add_option("--samples", opts.mc_samples, "Monte Carlo samples");
  app.add_option("--c-max", opts.geometric_c_max, "Kloosterman c-sum cutoff");
  app.add_option("--only", only, "criterion ids to run")->check(CLI::Range(1, 10));
  app.add_option("--json", json_out, "write the report as JSON");
  CLI11_PARSE(app, argc, argv);
  opts.only.insert(only.begin(), only.end());

  bool all = true;
  nlohmann::json report = nlohmann::json::array();
  for (int id = 1; id <= 10; ++id) {
    if (!opts.only.empty() && !opts.only.count(id)) continue;
    const auto r = tplab::acceptance::run_one(id, opts);
    std::cout << tplab::acceptance::format_line(r) << std::endl;
    all = all && r.pass;
    report.push_back(tplab::acceptance::to_json(r));
  }
  if (!json_out.empty()) std::ofstream(json_out) << report.dump(2) << "\n";
  return all ? 0 : 1;
}
