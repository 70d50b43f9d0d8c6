#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>

#include <boost/version.hpp>
#include <gmp.h>

namespace tplab::cli {

namespace {

void write(std::ostringstream& os, const ojson& j, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string pad_close = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case ojson::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{" << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << "," << nl;
        first = false;
        os << pad << ojson(it.key()).dump() << (indent > 0 ? ": " : ":");
        write(os, it.value(), indent, depth + 1);
      }
      os << nl << pad_close << "}";
      return;
    }
    case ojson::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[" << nl;
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << "," << nl;
        first = false;
        os << pad;
        write(os, v, indent, depth + 1);
      }
      os << nl << pad_close << "]";
      return;
    }
    case ojson::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

void flatten(const ojson& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else if (j.is_number_float()) {
    out.emplace_back(prefix, format_double(j.get<double>()));
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

std::string csv_cell(const ojson& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump17(const ojson& j, int indent) {
  std::ostringstream os;
  write(os, j, indent, 0);
  return os.str();
}

std::string to_csv(const ojson& result) {
  std::ostringstream os;
  if (result.is_object() && result.contains("rows") && result["rows"].is_array()) {
    const auto& rows = result["rows"];
    if (rows.empty()) return "";
    bool first = true;
    for (auto it = rows[0].begin(); it != rows[0].end(); ++it) {
      os << (first ? "" : ",") << it.key();
      first = false;
    }
    os << "\n";
    for (const auto& row : rows) {
      first = true;
      for (auto it = rows[0].begin(); it != rows[0].end(); ++it) {
        os << (first ? "" : ",") << (row.contains(it.key()) ? csv_cell(row[it.key()]) : "");
        first = false;
      }
      os << "\n";
    }
    return os.str();
  }
  std::vector<std::pair<std::string, std::string>> kv;
  flatten(result, "", kv);
  os << "key,value\n";
  for (const auto& [k, v] : kv) os << k << "," << v << "\n";
  return os.str();
}

std::string iso8601(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ojson Manifest::to_json(std::chrono::system_clock::time_point finished) const {
  ojson m;
  m["command"] = command;
  m["argv"] = argv;
  m["config"] = config;
  m["seed"] = has_seed ? ojson(seed) : ojson(nullptr);
  m["threads"] = threads;
  m["versions"] = {{"tplab", TPLAB_VERSION},
                   {"boost", std::to_string(BOOST_VERSION / 100000) + "." + std::to_string(BOOST_VERSION / 100 % 1000)},
                   {"gmp", gmp_version},
                   {"compiler", __VERSION__}};
  m["started"] = iso8601(started);
  m["finished"] = iso8601(finished);
  m["outputs"] = out_path.empty() ? ojson::array({"stdout"}) : ojson::array({out_path});
  m["format"] = format;
  return m;
}

}  // namespace tplab::cli
