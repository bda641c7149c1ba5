#include "certify/residual.hpp"

#include <cmath>

#include "certify/errors.hpp"

namespace certify {

namespace {

// Shared assembly kernel. The per-point integrand splits into a value part s1
// and a flux part (s2, s3); with separable basis factors the accumulation per
// point is two rank-one updates on the (nx x ny) coefficient matrix.
template <typename PointData>
FunctionalVector assemble(const SpectralSpace& space, const QuadRule2D& quad, std::string region,
                          PointData&& point_data) {
  const int nx = space.order_x();
  const int ny = space.order_y();
  Eigen::MatrixXd Fmat = Eigen::MatrixXd::Zero(nx, ny);
  Eigen::VectorXd vx(nx), dvx(nx), vy(ny), dvy(ny);

  // Tensor rules on the space's own rectangle admit a factorized assembly:
  // gather the three integrand components per point, contract with the 1D
  // factor tables afterwards. Cuts the per-point cost to the integrand itself.
  bool structured = quad.tensor_nx > 0 &&
                    static_cast<std::size_t>(quad.tensor_nx) * static_cast<std::size_t>(quad.tensor_ny) ==
                        quad.points.size();
  if (structured) {
    const int qx = quad.tensor_nx, qy = quad.tensor_ny;
    Eigen::MatrixXd Xv(qx, nx), Xd(qx, nx), Yv(qy, ny), Yd(qy, ny);
    for (int i = 0; i < qx && structured; ++i) {
      structured = space.eval_factors(quad.points[static_cast<std::size_t>(i) * qy], vx, dvx, vy, dvy);
      Xv.row(i) = vx;
      Xd.row(i) = dvx;
    }
    for (int j = 0; j < qy && structured; ++j) {
      structured = space.eval_factors(quad.points[static_cast<std::size_t>(j)], vx, dvx, vy, dvy);
      Yv.row(j) = vy;
      Yd.row(j) = dvy;
    }
    if (structured) {
      Eigen::MatrixXd S1(qx, qy), S2(qx, qy), S3(qx, qy);
      for (int i = 0; i < qx; ++i) {
        for (int j = 0; j < qy; ++j) {
          const std::size_t q = static_cast<std::size_t>(i) * qy + static_cast<std::size_t>(j);
          double s1, s2, s3;
          point_data(q, quad.points[q], s1, s2, s3);
          const double w = quad.weights[q];
          S1(i, j) = w * s1;
          S2(i, j) = w * s2;
          S3(i, j) = w * s3;
        }
      }
      Fmat.noalias() = Xv.transpose() * S1 * Yv;
      Fmat.noalias() += Xd.transpose() * S2 * Yv;
      Fmat.noalias() += Xv.transpose() * S3 * Yd;
    }
  }

  if (!structured) {
    Eigen::VectorXd tmp(ny);
    Fmat.setZero();
    for (std::size_t q = 0; q < quad.points.size(); ++q) {
      const Vec2& p = quad.points[q];
      if (!space.eval_factors(p, vx, dvx, vy, dvy)) continue;
      double s1, s2, s3;
      point_data(q, p, s1, s2, s3);
      const double w = quad.weights[q];
      tmp.noalias() = (w * s1) * vy + (w * s3) * dvy;
      Fmat.noalias() += vx * tmp.transpose();
      Fmat.noalias() += (w * s2) * (dvx * vy.transpose());
    }
  }

  FunctionalVector out;
  out.F.resize(nx * ny);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) out.F(space.mode_index(i, j)) = Fmat(i, j);
  out.region = std::move(region);
  out.quad_points = static_cast<int>(quad.points.size());
  if (!out.F.allFinite()) throw NumericalError("residual assembly produced non-finite entries (" + out.region + ")");
  return out;
}

FunctionalVector elliptic_assemble(const EllipticProblem& problem, const Field& field, Params mu,
                                   const SpectralSpace& space, const QuadRule2D& quad, std::string region) {
  problem.check_params(mu);
  return assemble(space, quad, std::move(region),
                  [&](std::size_t q, const Vec2& p, double& s1, double& s2, double& s3) {
                    const auto tag = quad.tag_of(q);
                    const double u = field.value(p, mu);
                    const Vec2 gu = field.gradient(p, mu);
                    const Vec2 flux = problem.A(p, tag, mu) * gu;
                    s1 = problem.f(p, tag, mu) - problem.b(p, tag, mu).dot(gu) - problem.c(p, tag, mu) * u;
                    s2 = -flux.x();
                    s3 = -flux.y();
                  });
}

}  // namespace

FunctionalVector elliptic_residual_inner(const EllipticProblem& problem, const Field& field, Params mu,
                                         const SpectralSpace& space, const QuadRule2D& quad) {
  return elliptic_assemble(problem, field, mu, space, quad, "inner");
}

FunctionalVector elliptic_residual_outer(const EllipticProblem& problem, const Field& field, Params mu,
                                         const SpectralSpace& space, const QuadRule2D& quad) {
  return elliptic_assemble(problem, field, mu, space, quad, "outer");
}

FunctionalVector parabolic_residual_at_time(const SpaceTimeProblem& problem, const SpaceTimeField& field,
                                            Params mu, double t, const SpectralSpace& space,
                                            const QuadRule2D& quad) {
  problem.spatial.check_params(mu);
  const EllipticProblem& sp = problem.spatial;
  return assemble(space, quad, "time-slice",
                  [&](std::size_t q, const Vec2& p, double& s1, double& s2, double& s3) {
                    const auto tag = quad.tag_of(q);
                    const double u = field.value(t, p, mu);
                    const double ut = field.time_derivative(t, p, mu);
                    const Vec2 gu = field.gradient(t, p, mu);
                    const Vec2 flux = sp.A(p, tag, mu) * gu;
                    s1 = problem.source(t, p, tag, mu) - ut - sp.b(p, tag, mu).dot(gu) - sp.c(p, tag, mu) * u;
                    s2 = -flux.x();
                    s3 = -flux.y();
                  });
}

double spacetime_dual_norm(const SpaceTimeProblem& problem, const SpaceTimeField& field, Params mu,
                           const GramSystem& gram, const QuadRule2D& spatial_quad,
                           const QuadRule& time_rule) {
  if (problem.T <= 0.0) throw ConfigError("space-time problem needs T > 0");
  const double half = 0.5 * problem.T;
  double acc = 0.0;
  for (std::size_t q = 0; q < time_rule.points.size(); ++q) {
    const double t = half * (time_rule.points[q] + 1.0);
    const FunctionalVector F =
        parabolic_residual_at_time(problem, field, mu, t, gram.space(), spatial_quad);
    const double nrm = gram.dual_norm(F.F).first;
    acc += half * time_rule.weights[q] * nrm * nrm;
  }
  return std::sqrt(std::max(0.0, acc));
}

}  // namespace certify
