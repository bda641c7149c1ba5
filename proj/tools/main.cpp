#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "certify/errors.hpp"
#include "certify/runner.hpp"

namespace {

int do_run(const std::string& config_path, const std::string& out_override, int workers,
           bool serial) {
  certify::RunConfig cfg = certify::load_config(config_path);
  if (!out_override.empty()) cfg.out_path = out_override;
  if (serial) {
    cfg.workers = 1;
  } else if (workers > 0) {
    cfg.workers = workers;
  } else if (const char* env = std::getenv("CERTIFY_WORKERS")) {
    cfg.workers = std::max(1, std::atoi(env));
  }

  const certify::RunResult result = certify::run(cfg);
  int ok = 0;
  for (const certify::BoundReport& r : result.reports) {
    if (r.error.empty()) {
      ++ok;
    } else {
      std::cerr << "row " << r.param_index << " failed: " << r.error << "\n";
    }
  }
  std::cout << "wrote " << result.csv_path << " (" << ok << "/" << result.reports.size()
            << " rows ok)\n";
  if (result.summary.eff_lower_median && result.summary.eff_upper_median) {
    std::cout << "effectivity lower min/med/max: " << *result.summary.eff_lower_min << " / "
              << *result.summary.eff_lower_median << " / " << *result.summary.eff_lower_max << "\n";
    std::cout << "effectivity upper min/med/max: " << *result.summary.eff_upper_min << " / "
              << *result.summary.eff_upper_median << " / " << *result.summary.eff_upper_max << "\n";
  }
  return ok == 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"residual-based error certification for black-box PDE approximations"};
  app.require_subcommand(1);

  std::string config_path, out_override, problem_id;
  int workers = 0;
  bool serial = false;

  CLI::App* run_cmd = app.add_subcommand("run", "execute a certification run from a JSON config");
  run_cmd->add_option("--config", config_path, "run configuration (JSON)")->required();
  run_cmd->add_option("--out", out_override, "override the CSV output path");
  run_cmd->add_option("--workers", workers, "worker thread count");
  run_cmd->add_flag("--serial", serial, "single worker, bit-reproducible row order");

  CLI::App* describe_cmd = app.add_subcommand("describe", "print a catalog problem sheet");
  describe_cmd->add_option("problem", problem_id, "catalog problem id")->required();

  try {
    app.parse(argc, argv);
    if (run_cmd->parsed()) return do_run(config_path, out_override, workers, serial);
    std::cout << certify::describe(problem_id);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const certify::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
