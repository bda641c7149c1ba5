#include <certify/field.hpp>
#include <certify/problem.hpp>
#include <certify/quadrature.hpp>
#include <certify/residual.hpp>

#include <doctest.h>

#include <cmath>

using namespace certify;

namespace {

QuadRule2D inner_rule(const Rect& rect, int n, const Polygon& domain) {
  const QuadRule g = gauss_legendre(n);
  return tag_points(tensor_rule(g, g, rect), domain);
}

// -laplace u = f problem with f = -laplacian(bump): the exact solution is the
// bump itself, polynomial of degree 8 per direction.
EllipticProblem manufactured_bump_problem(const Rect& rect) {
  auto bump = std::make_shared<BumpField>(rect);
  EllipticProblem p = EllipticProblem::laplace();
  p.f = [bump](const Vec2& x, std::string_view, Params) { return -bump->laplacian(x); };
  return p;
}

}  // namespace

TEST_CASE("residual of the exact solution vanishes") {
  const Rect rect(0, 1, 0, 1);
  const Polygon square(Ring{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const EllipticProblem problem = manufactured_bump_problem(rect);
  const BumpField bump(rect);

  const SpectralSpace space(rect, 10, 10);
  const QuadRule2D quad = inner_rule(rect, 32, square);
  const FunctionalVector r = elliptic_residual_inner(problem, bump, {}, space, quad);
  CHECK(r.region == "inner");
  CHECK(r.F.cwiseAbs().maxCoeff() < 1e-12);

  // Same through the outer/unstructured path; order 28 triangle rules are
  // exact for the degree-24 products of bump gradients and mode gradients.
  const QuadRule2D pquad = polygon_rule(square, 28, 1);
  const FunctionalVector ro = elliptic_residual_outer(problem, bump, {}, space, pquad);
  CHECK(ro.region == "outer");
  CHECK(ro.F.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("residual is affine in the field and linear in the source") {
  const Rect rect(0, 2, 0, 1);
  const Polygon box(Ring{{0, 0}, {2, 0}, {2, 1}, {0, 1}});
  EllipticProblem problem;
  problem.A = [](const Vec2&, std::string_view, Params) {
    return (Eigen::Matrix2d() << 2.0, 0.5, 0.5, 1.0).finished();
  };
  problem.b = [](const Vec2&, std::string_view, Params) { return Vec2(1.0, -1.0); };
  problem.c = [](const Vec2& p, std::string_view, Params) { return p.x() + 1.0; };
  problem.f = [](const Vec2& p, std::string_view, Params) { return std::sin(p.x() * p.y()); };
  problem.bounds = [](Params) { return CoefficientBounds{1.0, 2.0, std::sqrt(2.0), 3.0}; };

  auto u1 = bump_field(Rect(0.2, 1.5, 0.1, 0.9));
  auto u2 = bump_field(Rect(0.5, 1.9, 0.2, 0.8));
  const ScaledField combo_half(u1, 0.5);

  const SpectralSpace space(rect, 8, 8);
  const QuadRule2D quad = inner_rule(rect, 24, box);

  const Eigen::VectorXd F0 = elliptic_residual_inner(problem, *bump_field(Rect(0.1, 0.2, 0.1, 0.2)), {},
                                                     space, quad)
                                 .F;  // a fixed reference field
  const Eigen::VectorXd F1 = elliptic_residual_inner(problem, *u1, {}, space, quad).F;
  const Eigen::VectorXd F2 = elliptic_residual_inner(problem, *u2, {}, space, quad).F;

  // F(u) = L - B u with L the source part: affine combinations cancel L.
  AnalyticField sum(
      [&](const Vec2& p, Params mu) { return u1->value(p, mu) + u2->value(p, mu); },
      [&](const Vec2& p, Params mu) { return Vec2(u1->gradient(p, mu) + u2->gradient(p, mu)); });
  const Eigen::VectorXd Fsum = elliptic_residual_inner(problem, sum, {}, space, quad).F;
  const Eigen::VectorXd Fzero = elliptic_residual_inner(
                                    problem,
                                    AnalyticField([](const Vec2&, Params) { return 0.0; },
                                                  [](const Vec2&, Params) { return Vec2(0, 0); }),
                                    {}, space, quad)
                                    .F;
  CHECK((Fsum - (F1 + F2 - Fzero)).cwiseAbs().maxCoeff() < 1e-11);

  // Scaling half the field moves the residual halfway to the source part.
  const Eigen::VectorXd Fhalf = elliptic_residual_inner(problem, combo_half, {}, space, quad).F;
  CHECK((Fhalf - (0.5 * F1 + 0.5 * Fzero)).cwiseAbs().maxCoeff() < 1e-11);
  (void)F0;
}

TEST_CASE("structured and generic assembly paths agree") {
  // The tensor fast path triggers on tensor rules; compare against the same
  // rule with the tensor hints stripped (forcing the per-point path).
  const Rect rect(0, 4, 0, 0.5);
  const Polygon saw = sawblade_domain(8, 0.5, 0.5, 4.0);
  EllipticProblem problem;
  problem.A = [](const Vec2&, std::string_view tag, Params) {
    const double mu = (tag == "omega1") ? 0.3 : 0.7;
    return (Eigen::Matrix2d() << mu, 0.0, 0.0, 2.0 * mu).finished();
  };
  problem.b = [](const Vec2&, std::string_view, Params) { return Vec2(0.2, 0.1); };
  problem.c = [](const Vec2&, std::string_view, Params) { return 1.0; };
  problem.f = [](const Vec2&, std::string_view, Params) { return 1.0; };
  problem.bounds = [](Params) { return CoefficientBounds{0.3, 1.4, 0.5, 1.0}; };

  auto u = bump_field(Rect(0.5, 3.5, 0.1, 0.4));
  const SpectralSpace space(rect, 9, 9);

  QuadRule2D structured = inner_rule(rect, 16, saw);
  QuadRule2D generic = structured;
  generic.tensor_nx = generic.tensor_ny = 0;

  const Eigen::VectorXd Fs = elliptic_residual_inner(problem, *u, {}, space, structured).F;
  const Eigen::VectorXd Fg = elliptic_residual_inner(problem, *u, {}, space, generic).F;
  CHECK((Fs - Fg).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("restriction: inner dual norm below the full-domain dual norm") {
  // For a load that lives on the whole domain, testing only against functions
  // supported in the inner rectangle can't see more of the residual.
  const Polygon saw = sawblade_domain(8, 0.5, 0.5, 4.0);
  const Rect inner(0, 4, 0, 0.5), outer(0, 4, 0, 1);
  EllipticProblem problem = EllipticProblem::laplace(1.0);  // f = 1
  AnalyticField zero([](const Vec2&, Params) { return 0.0; },
                     [](const Vec2&, Params) { return Vec2(0, 0); });

  const SpectralSpace ispace(inner, 10, 10);
  const GramSystem igram(ispace);
  const double inner_norm =
      igram.dual_norm(elliptic_residual_inner(problem, zero, {}, ispace, inner_rule(inner, 24, saw)).F)
          .first;

  const SpectralSpace ospace(outer, 10, 10);
  const GramSystem ogram(ospace);
  const double outer_norm =
      ogram.dual_norm(elliptic_residual_outer(problem, zero, {}, ospace, polygon_rule(saw, 8, 2)).F)
          .first;

  CHECK(inner_norm > 0.0);
  CHECK(inner_norm <= outer_norm + 1e-6);
}

TEST_CASE("degenerate embedding: inner and outer residuals coincide") {
  // When the inner rect, domain and outer rect are all the unit square the two
  // assembly routes compute the same functional.
  const Rect rect(0, 1, 0, 1);
  const Polygon square(Ring{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const EllipticProblem problem = EllipticProblem::laplace(2.0);
  auto u = bump_field(rect);  // support = the whole square, so the integrand
                              // is one polynomial and both rules are exact

  const SpectralSpace space(rect, 8, 8);
  const GramSystem gram(space);
  const double ni =
      gram.dual_norm(elliptic_residual_inner(problem, *u, {}, space, inner_rule(rect, 32, square)).F).first;
  const double no =
      gram.dual_norm(elliptic_residual_outer(problem, *u, {}, space, polygon_rule(square, 28, 1)).F).first;
  CHECK(ni == doctest::Approx(no).epsilon(1e-9));
}

TEST_CASE("parabolic residual of a time-independent field is the elliptic one") {
  const Rect rect(0, 1, 0, 1);
  const Polygon square(Ring{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  SpaceTimeProblem stp;
  stp.spatial = EllipticProblem::laplace();
  stp.T = 2.0;
  stp.source = [](double, const Vec2&, std::string_view, Params) { return 1.0; };

  auto e = bump_field(Rect(0.2, 0.8, 0.2, 0.8));
  SeparableSpaceTimeField frozen([](double) { return 1.0; }, [](double) { return 0.0; }, e);

  const SpectralSpace space(rect, 8, 8);
  const QuadRule2D quad = inner_rule(rect, 24, square);
  const Eigen::VectorXd Fa = parabolic_residual_at_time(stp, frozen, {}, 0.3, space, quad).F;
  const Eigen::VectorXd Fb = parabolic_residual_at_time(stp, frozen, {}, 1.7, space, quad).F;
  CHECK((Fa - Fb).cwiseAbs().maxCoeff() < 1e-13);

  EllipticProblem elliptic = EllipticProblem::laplace(1.0);
  const Eigen::VectorXd Fe = elliptic_residual_inner(elliptic, *e, {}, space, quad).F;
  CHECK((Fa - Fe).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("separable space-time residual: sigma(t) = t gives a 1/sqrt(3) factor") {
  // Zero field, source f(t, x) = t * g(x): the Bochner dual norm over (0,1)
  // equals ||t||_L2(0,1) = 1/sqrt(3) times the stationary dual norm of g.
  const Rect rect(0, 1, 0, 1);
  const Polygon square(Ring{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  SpaceTimeProblem stp;
  stp.spatial = EllipticProblem::laplace();
  stp.T = 1.0;
  stp.source = [](double t, const Vec2& p, std::string_view, Params) {
    return t * std::sin(M_PI * p.x()) * std::sin(M_PI * p.y());
  };

  SeparableSpaceTimeField zero([](double) { return 0.0; }, [](double) { return 0.0; },
                               bump_field(Rect(0.4, 0.6, 0.4, 0.6)));

  const SpectralSpace space(rect, 12, 12);
  const GramSystem gram(space);
  const QuadRule2D quad = inner_rule(rect, 32, square);

  const double st = spacetime_dual_norm(stp, zero, {}, gram, quad, gauss_legendre(8));
  const double stationary =
      gram.dual_norm(parabolic_residual_at_time(stp, zero, {}, 1.0, space, quad).F).first;
  CHECK(st == doctest::Approx(stationary / std::sqrt(3.0)).epsilon(1e-10));

  // And the stationary norm at t = 1 is the eigenfunction value.
  CHECK(stationary == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0) * M_PI)).epsilon(1e-8));

  // Refining the time rule does not change the (polynomial-in-t) result.
  const double st2 = spacetime_dual_norm(stp, zero, {}, gram, quad, gauss_legendre(20));
  CHECK(st == doctest::Approx(st2).epsilon(1e-10));

  // Zero field and zero source: zero residual.
  SpaceTimeProblem silent = stp;
  silent.source = [](double, const Vec2&, std::string_view, Params) { return 0.0; };
  CHECK(spacetime_dual_norm(silent, zero, {}, gram, quad, gauss_legendre(8)) == 0.0);
}
