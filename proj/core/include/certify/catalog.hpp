#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "certify/certify.hpp"
#include "certify/field.hpp"
#include "certify/problem.hpp"

namespace certify {

/// Built-in problem setups: domain family, coefficients, embedding and a
/// default parameter grid.
struct CatalogEntry {
  std::string id;
  std::string summary;
  int param_dim = 0;
  bool parabolic = false;
  EllipticProblem problem;                      // the spatial operator for parabolic entries
  std::optional<SpaceTimeProblem> spacetime;
  std::function<Embedding(Params)> embedding;   // geometry may depend on the parameter
  std::vector<std::vector<double>> default_params;
};

const CatalogEntry& catalog_lookup(const std::string& id);
std::vector<std::string> catalog_ids();

/// An approximant plus the source convention that goes with it:
/// "truth-minus-bump" zeroes the source so the manufactured error is exactly
/// the unit bump.
struct FieldChoice {
  std::shared_ptr<Field> field;
  bool zero_source = false;
};

/// Field ids: "zero", "perturbed" (analytic field masked to zero trace),
/// "truth-minus-bump", or "mlp:<weights.json>" (masked likewise).
FieldChoice catalog_field(const CatalogEntry& entry, const std::string& field_id);

/// Space-time field ids for parabolic entries: "zero", "heat-truth"
/// (the manufactured exact solution), "heat-truth-minus-bump".
std::shared_ptr<SpaceTimeField> catalog_spacetime_field(const CatalogEntry& entry,
                                                        const std::string& field_id);

}  // namespace certify
