#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace qgraph {

/// Fixed 12-significant-digit formatting for CSV output; deterministic for
/// identical inputs.
inline std::string fmt12(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

/// Machine-readable verification report: a config echo followed by one CSV
/// row per check.
struct ReportDocument {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;

  struct Row {
    std::string name;
    bool pass = false;
    double value = 0.0;      // measured quantity (deviation, count, ...)
    double tolerance = 0.0;  // threshold it was compared against
    std::string detail;
  };
  std::vector<Row> rows;

  void add_config(const std::string& key, const std::string& value) {
    config.emplace_back(key, value);
  }
  void add_row(const std::string& name, bool pass, double value,
               double tolerance, const std::string& detail = "") {
    rows.push_back({name, pass, value, tolerance, detail});
  }

  bool all_passed() const {
    for (const Row& r : rows)
      if (!r.pass) return false;
    return true;
  }

  std::string to_text() const {
    std::string out = "# report: " + command + "\n";
    for (const auto& [k, v] : config) out += "# config: " + k + " = " + v + "\n";
    out += "check,status,value,tolerance,detail\n";
    for (const Row& r : rows) {
      out += r.name;
      out += r.pass ? ",PASS," : ",FAIL,";
      out += fmt12(r.value) + "," + fmt12(r.tolerance) + "," + r.detail + "\n";
    }
    out += std::string("# overall: ") + (all_passed() ? "PASS" : "FAIL") + "\n";
    return out;
  }
};

}  // namespace qgraph
