#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "certify/field.hpp"
#include "certify/geometry.hpp"

namespace certify {

/// Coefficient bounds entering the stability constants: coercivity a0 and the
/// sup norms of A, b, c over the domain and parameter set.
struct CoefficientBounds {
  double a0 = 1.0;
  double normA = 1.0;
  double normB = 0.0;
  double normC = 0.0;
};

/// Second-order elliptic problem in variational form:
///   (A grad u, grad v) + (b . grad u, v) + (c u, v) = f(v),  u = 0 on the boundary.
/// Coefficients may be piecewise by subregion; quadrature-point tags select
/// the piece.
struct EllipticProblem {
  using MatrixCoeff = std::function<Eigen::Matrix2d(const Vec2&, std::string_view tag, Params mu)>;
  using VectorCoeff = std::function<Vec2(const Vec2&, std::string_view tag, Params mu)>;
  using ScalarCoeff = std::function<double(const Vec2&, std::string_view tag, Params mu)>;
  using BoundsFn = std::function<CoefficientBounds(Params mu)>;
  using ParamCheck = std::function<bool(Params mu)>;

  MatrixCoeff A;
  VectorCoeff b;
  ScalarCoeff c;
  ScalarCoeff f;
  BoundsFn bounds;
  ParamCheck valid_params;  // optional; null means all parameters admissible
  int param_dim = 0;

  void check_params(Params mu) const;

  static EllipticProblem laplace(double source = 0.0);
};

/// u' + A_mu u = f on I = (0, T), u(0) = 0, with the spatial operator an
/// EllipticProblem whose source is replaced by the time-dependent one here.
struct SpaceTimeProblem {
  using TimeSource = std::function<double(double t, const Vec2&, std::string_view tag, Params mu)>;

  EllipticProblem spatial;
  double T = 1.0;
  TimeSource source;
};

}  // namespace certify
