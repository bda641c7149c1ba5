#pragma once

#include <Eigen/Dense>
#include <string>

#include "certify/field.hpp"
#include "certify/problem.hpp"
#include "certify/quadrature.hpp"
#include "certify/spectral.hpp"

namespace certify {

/// Variational residual tested against every mode of a spectral space:
/// F_i = f(phi_i) - a(u, phi_i).
struct FunctionalVector {
  Eigen::VectorXd F;
  std::string region;   // "inner" or "outer"
  int quad_points = 0;
};

/// Residual on the inner rectangle: test functions vanish outside it, so the
/// integral collapses to the tensor rule on it.
FunctionalVector elliptic_residual_inner(const EllipticProblem& problem, const Field& field, Params mu,
                                         const SpectralSpace& space, const QuadRule2D& quad);

/// Residual over the full domain tested against outer-rectangle modes
/// (restricted, not cut off: the pairing is the domain integral).
FunctionalVector elliptic_residual_outer(const EllipticProblem& problem, const Field& field, Params mu,
                                         const SpectralSpace& space, const QuadRule2D& quad);

/// Instantaneous parabolic residual F_i(t) = f(t)(phi_i) - (du/dt, phi_i) - a(u(t), phi_i).
FunctionalVector parabolic_residual_at_time(const SpaceTimeProblem& problem, const SpaceTimeField& field,
                                            Params mu, double t, const SpectralSpace& space,
                                            const QuadRule2D& quad);

/// Bochner dual norm sqrt( sum_q w_q ||F(t_q)||_*^2 ) with a Gauss rule in
/// time mapped to (0, T).
double spacetime_dual_norm(const SpaceTimeProblem& problem, const SpaceTimeField& field, Params mu,
                           const GramSystem& gram, const QuadRule2D& spatial_quad,
                           const QuadRule& time_rule);

}  // namespace certify
