#pragma once

#include <chrono>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace tplab::cli {

using ojson = nlohmann::ordered_json;

// JSON with every floating value printed as %.17g; non-finite values become null.
std::string dump17(const ojson& j, int indent = 2);

// CSV of result["rows"] when present, otherwise flattened key,value pairs.
std::string to_csv(const ojson& result);

std::string format_double(double v);

struct Manifest {
  std::string command;
  std::vector<std::string> argv;
  ojson config = ojson::object();
  std::uint64_t seed = 0;
  bool has_seed = false;
  unsigned threads = 0;
  std::string out_path;
  std::string format = "json";
  std::chrono::system_clock::time_point started = std::chrono::system_clock::now();

  ojson to_json(std::chrono::system_clock::time_point finished) const;
};

std::string iso8601(std::chrono::system_clock::time_point t);

}  // namespace tplab::cli
