#include "focklab/report.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "focklab/version.hpp"

namespace focklab {

using nlohmann::json;

bool Report::all_passed() const {
  for (const auto& t : tasks)
    if (!t.passed()) return false;
  return true;
}

std::string report_to_json(const Report& report) {
  json j;
  j["tool"] = report.tool;
  j["version"] = report.version;
  j["seed"] = report.seed;
  j["tolerance"] = report.tol;
  j["config"] = json::parse(report.config_echo.empty() ? "{}" : report.config_echo);
  j["tasks"] = json::array();
  json timing;
  for (const auto& t : report.tasks) {
    json tj;
    tj["name"] = t.name;
    tj["verdict"] = t.verdict;
    tj["residuals"] = t.residuals;
    tj["dimensions"] = t.dimensions;
    if (!t.witness.empty()) tj["witness"] = t.witness;
    if (!t.notes.empty()) tj["notes"] = t.notes;
    j["tasks"].push_back(tj);
    timing[t.name] = t.runtime_ms;
  }
  int pass = 0, fail = 0, error = 0;
  for (const auto& t : report.tasks) {
    if (t.verdict == "pass") ++pass;
    else if (t.verdict == "fail") ++fail;
    else ++error;
  }
  j["summary"] = {{"pass", pass}, {"fail", fail}, {"error", error}};
  j["timestamp"] = report.timestamp;
  timing["total_ms"] = report.total_ms;
  j["timing"] = timing;
  return j.dump(2) + "\n";
}

std::string report_to_text(const Report& report) {
  std::string out = report.tool;
  out += " ";
  out += report.version;
  out += "  seed=" + std::to_string(report.seed) + "\n";
  char line[256];
  for (const auto& t : report.tasks) {
    double worst = 0.0;
    for (const auto& [k, v] : t.residuals) worst = std::max(worst, v);
    std::snprintf(line, sizeof(line), "%-12s %-5s  max residual %.3e", t.name.c_str(),
                  t.verdict.c_str(), worst);
    out += line;
    if (!t.witness.empty()) out += "  [" + t.witness + "]";
    out += "\n";
  }
  out += report.all_passed() ? "all tasks passed\n" : "FAILURES present\n";
  return out;
}

void emit(const Report& report, const std::string& path, const std::string& format) {
  const std::string body =
      format == "text" ? report_to_text(report) : report_to_json(report);
  if (path.empty() || path == "-") {
    std::fputs(body.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write report to " + path);
  out << body;
  if (!out) throw Error(ErrorKind::IoError, "short write to " + path);
}

}  // namespace focklab
