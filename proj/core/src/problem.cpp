#include "certify/problem.hpp"

#include "certify/errors.hpp"

namespace certify {

void EllipticProblem::check_params(Params mu) const {
  if (param_dim >= 0 && static_cast<int>(mu.size()) != param_dim) {
    throw ConfigError("parameter vector has size " + std::to_string(mu.size()) + ", expected " +
                      std::to_string(param_dim));
  }
  if (valid_params && !valid_params(mu)) {
    throw ConfigError("parameter value outside the declared parameter set");
  }
}

EllipticProblem EllipticProblem::laplace(double source) {
  EllipticProblem p;
  p.A = [](const Vec2&, std::string_view, Params) { return Eigen::Matrix2d::Identity().eval(); };
  p.b = [](const Vec2&, std::string_view, Params) { return Vec2(0.0, 0.0); };
  p.c = [](const Vec2&, std::string_view, Params) { return 0.0; };
  p.f = [source](const Vec2&, std::string_view, Params) { return source; };
  p.bounds = [](Params) { return CoefficientBounds{1.0, 1.0, 0.0, 0.0}; };
  p.param_dim = 0;
  return p;
}

}  // namespace certify
