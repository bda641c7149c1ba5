#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "certify/problem.hpp"
#include "certify/residual.hpp"

namespace certify {

/// The two multipliers of the error-residual sandwich
///   c_B ||r||_* <= error <= C_B ||r||_*
/// together with the coefficient bounds they were derived from.
struct StabilityConstants {
  double c_B = 1.0;
  double C_B = 1.0;
  std::string provenance = "analytic-elliptic";  // or "user-config"
  double a0 = 1.0, normA = 1.0, normB = 0.0, normC = 0.0, s_PF = 0.0;
};

/// c_B = (||A|| + s_PF ||b|| + s_PF^2 ||c||)^-1, C_B = a0^-1.
StabilityConstants elliptic_constants(double a0, double normA, double normB, double normC,
                                      double s_PF);

/// Discretization knobs, exposed in run configs.
struct Resolution {
  int order = 12;          // spectral order per direction, inner and outer
  int inner_quad = 32;     // Gauss points per direction on the inner rectangle
  int triangle_order = 6;  // polynomial exactness of the per-triangle rules
  int refine_levels = 2;   // uniform refinements of the domain triangulation
  int time_points = 16;    // Gauss points on (0, T)
};

/// One certified row: dual norms, bounds, optional reference comparison,
/// per-phase wall-clock.
struct BoundReport {
  int param_index = 0;
  std::vector<double> mu;
  double dual_inner = 0.0;
  double dual_outer = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  std::optional<double> ref_error;
  std::optional<double> eff_lower;  // lower_bound / ref_error
  std::optional<double> eff_upper;  // upper_bound / ref_error
  double t_inner_s = 0.0;
  double t_outer_s = 0.0;
  double t_oracle_s = 0.0;
  std::string error;  // non-empty if this row failed
};

/// Lower = c_B * dual norm of the residual restricted to the inner rectangle,
/// upper = C_B * dual norm of the residual tested against outer-rectangle
/// modes. Constants are derived from problem.bounds and the outer Poincare
/// constant.
BoundReport certify_elliptic(const EllipticProblem& problem, const Field& field, Params mu,
                             const Embedding& embedding, const Resolution& res);

/// Space-time analogue with user-supplied constants (no analytic default).
BoundReport certify_parabolic(const SpaceTimeProblem& problem, const SpaceTimeField& field, Params mu,
                              const Embedding& embedding, const Resolution& res,
                              const StabilityConstants& constants);

/// Estimated true error for effectivity columns; fills the elapsed seconds.
using ReferenceOracle = std::function<double(Params mu, double& t_s)>;

/// One report per parameter, deterministic order, failures recorded per row.
std::vector<BoundReport> sweep(const EllipticProblem& problem, const Field& field,
                               const std::vector<std::vector<double>>& params,
                               const std::function<Embedding(Params)>& embedding,
                               const Resolution& res, const ReferenceOracle& oracle, int workers);

struct SweepSummary {
  int rows = 0;
  int failures = 0;
  std::optional<double> eff_lower_min, eff_lower_median, eff_lower_max;
  std::optional<double> eff_upper_min, eff_upper_median, eff_upper_max;
};

SweepSummary summarize(const std::vector<BoundReport>& reports);

}  // namespace certify
