#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "focklab/dynamics.hpp"

namespace focklab {

// Runtime configuration for the verification tool.  JSON on disk; complex
// scalars are [re, im] pairs and matrices nested row-major arrays of them.
struct Config {
  SemigroupKind kind = SemigroupKind::Free;
  int d = 1;
  int h = 1;
  int L = 2;
  std::vector<RowOperator> rows;
  SpanBasis algebra;
  std::string algebra_name;  // named algebras are echoed by name
  std::vector<std::string> tasks;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format = "json";
  bool parallel = false;
  std::string echo;  // original JSON document, canonically re-serialized
};

Config parse_config(const std::string& path);
Config parse_config_text(const std::string& text);

// row entry helpers shared with tests
RowOperator row_from_gallery(const std::string& name, int D, Complex lambda,
                             Complex mu, const std::string& part);
SpanBasis named_algebra(const std::string& name, int h);

}  // namespace focklab
