// Acceptance gate: one pass/fail line per criterion, exit non-zero if any
// criterion fails. Each check measures the shipped library end to end.

#include <certify/catalog.hpp>
#include <certify/certify.hpp>
#include <certify/mlp.hpp>
#include <certify/oracle.hpp>
#include <certify/residual.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace certify;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("criterion %d: %s — %s (%s)\n", criterion, pass ? "PASS" : "FAIL", what.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

double now_minus(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// r(v) = integral of g * v against every mode, dense tensor Gauss rule.
Eigen::VectorXd spectral_load(const SpectralSpace& space, int quad_n,
                              const std::function<double(const Vec2&)>& g) {
  const QuadRule gl = gauss_legendre(quad_n);
  const QuadRule2D quad = tensor_rule(gl, gl, space.rect());
  Eigen::VectorXd F = Eigen::VectorXd::Zero(space.dim());
  Eigen::VectorXd vals(space.dim());
  Eigen::MatrixX2d grads(space.dim(), 2);
  for (std::size_t q = 0; q < quad.points.size(); ++q) {
    space.eval_basis(quad.points[q], vals, grads);
    F += quad.weights[q] * g(quad.points[q]) * vals;
  }
  return F;
}

// 1: manufactured unit error on the saw-blade, both bounds -> 1 at order 16.
void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const CatalogEntry& saw = catalog_lookup("sawblade");
  const std::vector<double> mu = {1.0, 0.1};
  const Embedding emb = saw.embedding(mu);
  auto bump = std::make_shared<BumpField>(emb.inner);
  const ScaledField field(bump, -1.0);  // truth = 0, error = unit bump

  Resolution res;
  res.order = 16;
  res.triangle_order = 12;
  res.refine_levels = 3;
  const BoundReport r = certify_elliptic(EllipticProblem::laplace(0.0), field, {}, emb, res);
  const double elapsed = now_minus(t0);

  const bool lower_ok = std::abs(r.lower_bound - 1.0) < 1e-6;
  const bool upper_ok = std::abs(r.upper_bound - 1.0) < 1e-6;
  report(1, lower_ok && upper_ok && elapsed < 10.0, "unit-error sandwich exact at order 16",
         "lower=" + fmt(r.lower_bound) + " upper=" + fmt(r.upper_bound) + " t=" + fmt(elapsed) +
             "s; the upper bound is limited by the polynomial outer space, see README");
}

// 2: analytic bound multipliers reproduced exactly.
void criterion_2() {
  bool ok = true;
  std::string detail;

  // Piecewise-diffusion family: c_B = 1/(2 max mu), C_B = 1/min mu.
  const CatalogEntry& saw = catalog_lookup("sawblade");
  for (const auto& mu : saw.default_params) {
    const CoefficientBounds cb = saw.problem.bounds(mu);
    const StabilityConstants sc = elliptic_constants(cb.a0, cb.normA, cb.normB, cb.normC, 0.25);
    const double c_exact = 1.0 / (2.0 * std::max(mu[0], mu[1]));
    const double C_exact = 1.0 / std::min(mu[0], mu[1]);
    ok = ok && std::abs(sc.c_B - c_exact) <= 1e-14 * c_exact &&
         std::abs(sc.C_B - C_exact) <= 1e-14 * C_exact;
  }
  detail += "diffusion family c_B=1/(2 max mu), C_B=1/min mu";

  // Advection-reaction problem: C_B = 1/lambda_min(A) = 4 exactly.
  const CatalogEntry& notch = catalog_lookup("notch");
  const CoefficientBounds ncb = notch.problem.bounds(std::vector<double>{0.3});
  ok = ok && std::abs(1.0 / ncb.a0 - 4.0) <= 1e-14;
  detail += "; notch C_B=" + fmt(1.0 / ncb.a0);
  report(2, ok, "stability constants reproduced to 1e-14", detail);
}

// 3: eigenfunction dual norm 1/(2 sqrt(2) pi) from both oracles.
void criterion_3() {
  const double exact = 1.0 / (2.0 * std::sqrt(2.0) * M_PI);
  auto g = [](const Vec2& p) { return std::sin(M_PI * p.x()) * std::sin(M_PI * p.y()); };

  auto t0 = std::chrono::steady_clock::now();
  const SpectralSpace space(Rect(0, 1, 0, 1), 12, 12);
  const GramSystem gram(space);
  const double spectral = gram.dual_norm(spectral_load(space, 32, g)).first;
  const double t_spectral = now_minus(t0);
  const double spectral_err = std::abs(spectral - exact) / exact;

  t0 = std::chrono::steady_clock::now();
  const Polygon square(Ring{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const Mesh mesh = mesh_polygon(square, 3);
  const double p1 = p1_dual_norm(mesh, p1_load(mesh, g, 6));
  const double t_p1 = now_minus(t0);
  const double p1_err = std::abs(p1 - exact) / exact;

  const bool ok = spectral_err < 1e-8 && t_spectral < 1.0 && p1_err < 0.01 && t_p1 < 30.0;
  report(3, ok, "eigenfunction dual norm from both oracles",
         "spectral rel err=" + fmt(spectral_err) + " in " + fmt(t_spectral) +
             "s; P1 rel err=" + fmt(p1_err) + " at 3 levels in " + fmt(t_p1) +
             "s; the P1 gap vs the 1% target is noted in README");
}

// 4: sandwich validity for a perturbed field across both elliptic catalogs.
void criterion_4() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  int rows = 0;
  double max_slack = 0.0;
  std::string worst;

  for (const std::string& id : {std::string("sawblade"), std::string("notch")}) {
    const CatalogEntry& entry = catalog_lookup(id);
    const FieldChoice choice = catalog_field(entry, "perturbed");
    const Resolution res;  // stock defaults

    ReferenceOracle oracle = [&](Params mu, double& t_s) {
      const auto o0 = std::chrono::steady_clock::now();
      const Polygon domain = entry.embedding(mu).domain;
      const Mesh coarse = mesh_polygon(domain, 4);
      const Mesh fine = mesh_polygon(domain, 5);
      const double e_coarse =
          h1_error(*choice.field, p1_solve(entry.problem, mu, coarse), coarse, mu);
      const double e_fine = h1_error(*choice.field, p1_solve(entry.problem, mu, fine), fine, mu);
      // Documented allowance: three times the last observed refinement
      // increment of the reference error, floored at 1%.
      max_slack = std::max(max_slack,
                           3.0 * std::abs(e_fine - e_coarse) / std::max(e_fine, 1e-30));
      t_s = now_minus(o0);
      return e_fine;
    };

    const auto reports =
        sweep(entry.problem, *choice.field, entry.default_params, entry.embedding, res, oracle, 0);
    for (const BoundReport& r : reports) {
      ++rows;
      if (!r.error.empty() || !r.ref_error) {
        ok = false;
        worst = id + " row " + std::to_string(r.param_index) + ": " + r.error;
        continue;
      }
      const double slack = std::max(max_slack, 0.01);
      if (!(r.lower_bound <= *r.ref_error * (1.0 + slack) &&
            *r.ref_error <= r.upper_bound * (1.0 + slack))) {
        ok = false;
        worst = id + " row " + std::to_string(r.param_index) + ": lower=" + fmt(r.lower_bound) +
                " ref=" + fmt(*r.ref_error) + " upper=" + fmt(r.upper_bound);
      }
    }
  }
  const double elapsed = now_minus(t0);
  report(4, ok && rows >= 20 && elapsed < 300.0, "sandwich encloses the reference error",
         std::to_string(rows) + " rows, slack=" + fmt(std::max(max_slack, 0.01)) +
             ", t=" + fmt(elapsed) + "s" + (worst.empty() ? "" : "; worst: " + worst));
}

// 5: Bochner chain for a separable heat perturbation.
void criterion_5() {
  const Rect inner(0.25, 0.75, 0.25, 0.75);
  const Rect outer(0, 1, 0, 1);
  const Polygon square(Ring{{0, 0}, {1, 0}, {1, 1}, {0, 1}});

  SpaceTimeProblem heat;
  heat.spatial = EllipticProblem::laplace();
  heat.T = 1.0;
  heat.source = [](double t, const Vec2& p, std::string_view, Params) {
    return t * std::sin(M_PI * p.x()) * std::sin(M_PI * p.y());
  };
  SeparableSpaceTimeField zero([](double) { return 0.0; }, [](double) { return 0.0; },
                               bump_field(inner));

  const QuadRule gl = gauss_legendre(32);
  const QuadRule time_rule = gauss_legendre(16);

  const SpectralSpace ispace(inner, 12, 12);
  const GramSystem igram(ispace);
  const QuadRule2D iquad = tag_points(tensor_rule(gl, gl, inner), square);
  const double st_inner = spacetime_dual_norm(heat, zero, {}, igram, iquad, time_rule);

  const SpectralSpace ospace(outer, 12, 12);
  const GramSystem ogram(ospace);
  const QuadRule2D oquad = polygon_rule(square, 10, 2);
  const double st_outer = spacetime_dual_norm(heat, zero, {}, ogram, oquad, time_rule);

  // Separable closed form: sigma(t) = t on (0,1) scales the stationary dual
  // norm by ||sigma||_L2 = 1/sqrt(3).
  const double stat_outer =
      ogram.dual_norm(parabolic_residual_at_time(heat, zero, {}, 1.0, ospace, oquad).F).first;
  const double scaling_err = std::abs(st_outer - stat_outer / std::sqrt(3.0)) / st_outer;

  const bool ok = st_inner <= st_outer + 1e-10 && scaling_err < 1e-6;
  report(5, ok, "space-time dual norms: restriction and separable scaling",
         "inner=" + fmt(st_inner) + " <= outer=" + fmt(st_outer) +
             ", scaling rel err=" + fmt(scaling_err));
}

// 6: nested-space monotonicity for random smooth functionals.
void criterion_6() {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int violations = 0;

  const Polygon square(Ring{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  std::vector<Mesh> meshes;
  for (int lev = 1; lev <= 4; ++lev) meshes.push_back(mesh_polygon(square, lev));

  for (int trial = 0; trial < 10; ++trial) {
    // Random smooth density, fixed across the whole ladder.
    std::vector<double> a(9);
    for (double& ak : a) ak = u(rng);
    auto g = [&a](const Vec2& p) {
      double s = 0.0;
      for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
          s += a[static_cast<std::size_t>(3 * (i - 1) + j - 1)] * std::sin(i * M_PI * p.x()) *
               std::sin(j * M_PI * p.y());
      return s;
    };

    double prev = 0.0;
    for (int n = 2; n <= 16; n += 2) {
      const SpectralSpace space(Rect(0, 1, 0, 1), n, n);
      const GramSystem gram(space);
      const double norm = gram.dual_norm(spectral_load(space, 24, g)).first;
      if (norm < prev - 1e-12) ++violations;
      prev = norm;
    }

    prev = 0.0;
    for (const Mesh& mesh : meshes) {
      const double norm = p1_dual_norm(mesh, p1_load(mesh, g, 6));
      if (norm < prev - 1e-12) ++violations;
      prev = norm;
    }
  }
  report(6, violations == 0, "dual norms nondecreasing on nested ladders",
         std::to_string(violations) + " violations over 10 spectral + 10 P1 ladders");
}

// 7: quadrature exactness and MLP gradient fidelity.
void criterion_7() {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_quad = 0.0;

  // Gauss-Legendre, degree 2n-1.
  for (int n = 1; n <= 20; ++n) {
    const QuadRule g = gauss_legendre(n);
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double q = 0.0;
      for (std::size_t k = 0; k < g.points.size(); ++k) q += g.weights[k] * std::pow(g.points[k], d);
      const double exact = (d % 2 == 0) ? 2.0 / (d + 1) : 0.0;
      worst_quad = std::max(worst_quad, std::abs(q - exact));
    }
  }
  // Gauss-Lobatto, degree 2n-3.
  for (int n = 2; n <= 12; ++n) {
    const QuadRule l = gauss_lobatto(n);
    for (int d = 0; d <= 2 * n - 3; ++d) {
      double q = 0.0;
      for (std::size_t k = 0; k < l.points.size(); ++k) q += l.weights[k] * std::pow(l.points[k], d);
      const double exact = (d % 2 == 0) ? 2.0 / (d + 1) : 0.0;
      worst_quad = std::max(worst_quad, std::abs(q - exact));
    }
  }
  // Triangle rules on the reference triangle: monomial degree == order.
  const Triangle ref{{0, 0}, {1, 0}, {0, 1}};
  auto fact = [](int n) {
    double f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
  };
  for (int order = 1; order <= 10; ++order) {
    const QuadRule2D rule = triangle_rule(order, ref);
    for (int a = 0; a <= order; ++a)
      for (int b = 0; a + b <= order; ++b) {
        double q = 0.0;
        for (std::size_t k = 0; k < rule.points.size(); ++k)
          q += rule.weights[k] * std::pow(rule.points[k].x(), a) * std::pow(rule.points[k].y(), b);
        worst_quad = std::max(worst_quad, std::abs(q - fact(a) * fact(b) / fact(a + b + 2)));
      }
  }
  // Tensor rule: mixed monomial on a stretched box.
  {
    const Rect box(0, 4, 0, 1);
    const QuadRule g8 = gauss_legendre(8);
    const QuadRule2D rule = tensor_rule(g8, g8, box);
    double q = 0.0;
    for (std::size_t k = 0; k < rule.points.size(); ++k)
      q += rule.weights[k] * std::pow(rule.points[k].x(), 5) * std::pow(rule.points[k].y(), 7);
    worst_quad = std::max(worst_quad, std::abs(q - (std::pow(4.0, 6) / 6.0) * (1.0 / 8.0)) /
                                          (std::pow(4.0, 6) / 48.0));
  }

  // MLP gradients vs central differences on 20 random tanh nets.
  double worst_grad = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + trial % 4;
    MLPWeights w;
    w.input_dim = dim;
    std::vector<int> widths = {6, 5, 1};
    int prev = dim;
    std::normal_distribution<double> n01;
    for (int width : widths) {
      MLPWeights::Layer layer;
      layer.W = Eigen::MatrixXd::NullaryExpr(width, prev, [&] { return n01(rng); });
      layer.b = Eigen::VectorXd::NullaryExpr(width, [&] { return n01(rng); });
      w.layers.push_back(std::move(layer));
      prev = width;
    }
    Eigen::VectorXd z(dim);
    for (int i = 0; i < dim; ++i) z[i] = u(rng);
    const Eigen::VectorXd grad = mlp_input_grad(w, z);
    for (int i = 0; i < dim; ++i) {
      Eigen::VectorXd zp = z, zm = z;
      zp[i] += 1e-6;
      zm[i] -= 1e-6;
      const double fd = (mlp_eval(w, zp) - mlp_eval(w, zm)) / 2e-6;
      worst_grad = std::max(worst_grad, std::abs(grad[i] - fd) / (1.0 + std::abs(fd)));
    }
  }

  report(7, worst_quad < 1e-12 && worst_grad < 1e-6, "quadrature exactness and MLP gradients",
         "worst quadrature err=" + fmt(worst_quad) + ", worst gradient err=" + fmt(worst_grad));
}

// 8: the inner dual-norm phase is at least 10x cheaper than the outer phase
// at stock resolution on the saw-blade catalog.
void criterion_8() {
  const CatalogEntry& saw = catalog_lookup("sawblade");
  const FieldChoice choice = catalog_field(saw, "truth-minus-bump");
  EllipticProblem problem = saw.problem;
  problem.f = [](const Vec2&, std::string_view, Params) { return 0.0; };
  const Resolution res;  // stock defaults

  // Warm-up row so shared geometry preparation is excluded from both phases.
  (void)certify_elliptic(problem, *choice.field, std::vector<double>{0.5, 0.07},
                         saw.embedding(std::vector<double>{0.5, 0.07}), res);

  const auto reports = sweep(problem, *choice.field, saw.default_params, saw.embedding, res,
                             nullptr, 1);
  double t_inner = 0.0, t_outer = 0.0;
  bool all_ok = true;
  for (const BoundReport& r : reports) {
    all_ok = all_ok && r.error.empty();
    t_inner += r.t_inner_s;
    t_outer += r.t_outer_s;
  }
  const bool ok = all_ok && 10.0 * t_inner < t_outer;
  report(8, ok, "inner phase at least 10x cheaper than outer phase",
         "sum t_inner=" + fmt(t_inner) + "s, sum t_outer=" + fmt(t_outer) +
             "s, ratio=" + fmt(t_outer / std::max(t_inner, 1e-12)));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  std::printf("%d of 8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
