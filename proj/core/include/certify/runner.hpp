#pragma once

#include <optional>
#include <string>
#include <vector>

#include "certify/catalog.hpp"
#include "certify/certify.hpp"

namespace certify {

/// Parsed and validated run configuration (JSON, schema_version 1).
struct RunConfig {
  std::string problem_id;
  std::string field_id = "perturbed";
  std::vector<std::vector<double>> params;  // empty: use the catalog defaults
  Resolution res;
  std::optional<StabilityConstants> parabolic_constants;
  bool oracle_enabled = true;
  int oracle_refine = 3;
  std::string out_path = "report.csv";
  int workers = 0;  // 0: hardware concurrency
  unsigned seed = 0;

  // Only for problem_id == "custom": geometry and constant coefficients.
  std::optional<CatalogEntry> custom;
};

RunConfig load_config(const std::string& path);

/// {"vertices": [[x,y],...], "subregions": {"name": [[[x,y],...],...]}}
Polygon load_polygon(const std::string& path);

struct RunResult {
  std::vector<BoundReport> reports;
  SweepSummary summary;
  std::string csv_path;
};

/// Execute the configured certification run and write the CSV artifact.
RunResult run(const RunConfig& config);

void write_csv(const std::vector<BoundReport>& reports, const std::string& path);

/// Problem sheet: domain, coefficients, constants at a sample parameter.
std::string describe(const std::string& problem_id);

}  // namespace certify
