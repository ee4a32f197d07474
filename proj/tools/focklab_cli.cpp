#include <CLI11.hpp>
#include <cstdio>
#include <string>

#include "focklab/report.hpp"
#include "focklab/version.hpp"

// Verification driver: loads a system description, runs the requested task
// list, and emits a machine-readable report.
// Exit codes: 0 all tasks pass, 1 any task fails or errors, 2 config error.
int main(int argc, char** argv) {
  CLI::App app{"focklab - finite-truncation semicrossed product laboratory"};
  app.set_version_flag("--version", std::string("focklab ") + focklab::kVersion);

  std::string config_path;
  std::string out_path;
  std::string format;
  std::uint64_t seed = 0;
  double tol = -1.0;
  bool parallel = false;

  app.add_option("--config", config_path, "path to the JSON config")->required();
  app.add_option("--out", out_path, "report destination (default from config, else stdout)");
  app.add_option("--format", format, "json|text (overrides config)");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed (overrides config)");
  auto* tol_opt = app.add_option("--tol", tol, "tolerance (overrides config)");
  app.add_flag("--parallel", parallel, "run independent tasks concurrently");

  CLI11_PARSE(app, argc, argv);

  focklab::Config cfg;
  try {
    cfg = focklab::parse_config(config_path);
    if (!out_path.empty()) cfg.out_path = out_path;
    if (!format.empty()) {
      if (format != "json" && format != "text")
        throw focklab::Error(focklab::ErrorKind::ParseError, "format must be json or text");
      cfg.format = format;
    }
    if (seed_opt->count()) cfg.seed = seed;
    if (tol_opt->count()) cfg.tol = tol;
    if (parallel) cfg.parallel = true;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }

  try {
    const focklab::Report report = focklab::run(cfg);
    focklab::emit(report, cfg.out_path, cfg.format);
    return report.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
