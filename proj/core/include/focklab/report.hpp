#pragma once

#include <map>
#include <string>
#include <vector>

#include "focklab/config.hpp"

namespace focklab {

struct TaskResult {
  std::string name;
  std::string verdict;  // "pass" | "fail" | "error"
  std::map<std::string, double> residuals;
  std::map<std::string, long> dimensions;
  std::string witness;
  std::vector<std::string> notes;
  double runtime_ms = 0.0;

  bool passed() const { return verdict == "pass"; }
};

struct Report {
  std::string tool = "focklab";
  std::string version;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::string config_echo;  // JSON text
  std::vector<TaskResult> tasks;
  std::string timestamp;    // excluded from the determinism contract
  double total_ms = 0.0;    // likewise

  bool all_passed() const;
  int exit_code() const { return all_passed() ? 0 : 1; }
};

// canonical JSON serialization; "timestamp" and "timing" are the only
// fields that vary between identical runs
std::string report_to_json(const Report& report);
std::string report_to_text(const Report& report);
void emit(const Report& report, const std::string& path, const std::string& format);

// run the configured task list (sequential unless config.parallel)
Report run(const Config& config);

}  // namespace focklab
