#include "certify/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <unordered_map>

namespace certify {

namespace {

// Legendre value and derivative at x by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

double QuadRule2D::weight_sum() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

QuadRule gauss_legendre(int n) {
  if (n < 1) throw std::domain_error("gauss_legendre requires n >= 1");
  QuadRule rule;
  rule.points.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  rule.exactness_degree = 2 * n - 1;
  const double pi = std::numbers::pi;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (4 * i + 3) / (4 * n + 2));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const auto [p, dp] = legendre(n, x);
    (void)p;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.points[static_cast<std::size_t>(i)] = -x;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    rule.weights[static_cast<std::size_t>(i)] = w;
  }
  if (n % 2 == 1) {
    rule.points[static_cast<std::size_t>(n / 2)] = 0.0;
    const auto [p, dp] = legendre(n, 0.0);
    (void)p;
    rule.weights[static_cast<std::size_t>(n / 2)] = 2.0 / (dp * dp);
  }
  return rule;
}

QuadRule gauss_lobatto(int n) {
  if (n < 2) throw std::domain_error("gauss_lobatto requires n >= 2");
  QuadRule rule;
  rule.points.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  rule.exactness_degree = 2 * n - 3;
  const double pi = std::numbers::pi;
  const int m = n - 1;
  const double endpoint_w = 2.0 / (n * m);
  rule.points.front() = -1.0;
  rule.points.back() = 1.0;
  rule.weights.front() = endpoint_w;
  rule.weights.back() = endpoint_w;
  // interior nodes: roots of P'_{n-1}
  for (int i = 1; i < m; ++i) {
    double x = std::cos(pi * i / m);
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(m, x);
      // Newton on P'_m using P''_m = (2x P'_m - m(m+1) P_m) / (1 - x^2)
      const double ddp = (2.0 * x * dp - m * (m + 1) * p) / (1.0 - x * x);
      const double dx = dp / ddp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const auto [p, dp] = legendre(m, x);
    (void)dp;
    rule.points[static_cast<std::size_t>(m - i)] = x;
    rule.weights[static_cast<std::size_t>(m - i)] = 2.0 / (n * m * p * p);
  }
  return rule;
}

QuadRule2D tensor_rule(const QuadRule& rule_x, const QuadRule& rule_y, const Rect& rect) {
  QuadRule2D out;
  out.exactness_degree = std::min(rule_x.exactness_degree, rule_y.exactness_degree);
  out.tensor_nx = static_cast<int>(rule_x.points.size());
  out.tensor_ny = static_cast<int>(rule_y.points.size());
  const double sx = 0.5 * rect.width(), sy = 0.5 * rect.height();
  out.points.reserve(rule_x.points.size() * rule_y.points.size());
  out.weights.reserve(out.points.capacity());
  for (std::size_t i = 0; i < rule_x.points.size(); ++i)
    for (std::size_t j = 0; j < rule_y.points.size(); ++j) {
      out.points.push_back({rect.x0 + sx * (rule_x.points[i] + 1.0), rect.y0 + sy * (rule_y.points[j] + 1.0)});
      out.weights.push_back(rule_x.weights[i] * rule_y.weights[j] * sx * sy);
    }
  return out;
}

QuadRule2D triangle_rule(int order, const Triangle& tri) {
  if (order < 1) throw std::domain_error("triangle_rule requires order >= 1");
  const double area2 = 2.0 * tri.area();
  if (area2 <= 1e-14) throw InvalidGeometryError("degenerate triangle in triangle_rule");
  // Duffy map of (0,1)^2 onto the unit triangle: (u,v) -> (u(1-v), v),
  // Jacobian (1-v) raises the v-degree by one.
  const int n = order / 2 + 2;
  const QuadRule g = gauss_legendre(n);
  QuadRule2D out;
  out.exactness_degree = order;
  out.points.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  out.weights.reserve(out.points.capacity());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double u = 0.5 * (g.points[static_cast<std::size_t>(i)] + 1.0);
      const double v = 0.5 * (g.points[static_cast<std::size_t>(j)] + 1.0);
      const double x = u * (1.0 - v), y = v;
      const Vec2 p = tri.a + x * (tri.b - tri.a) + y * (tri.c - tri.a);
      const double w = 0.25 * g.weights[static_cast<std::size_t>(i)] * g.weights[static_cast<std::size_t>(j)] *
                       (1.0 - v) * area2;
      out.points.push_back(p);
      out.weights.push_back(w);
    }
  return out;
}

QuadRule2D polygon_rule(const Polygon& poly, int order, int refine_levels) {
  const Triangulation tris = refine(triangulate(poly), refine_levels);
  QuadRule2D out;
  out.exactness_degree = order;
  out.tag_names = tris.tag_names;
  for (std::size_t t = 0; t < tris.triangles.size(); ++t) {
    const QuadRule2D local = triangle_rule(order, tris.triangles[t]);
    for (std::size_t q = 0; q < local.points.size(); ++q) {
      out.points.push_back(local.points[q]);
      out.weights.push_back(local.weights[q]);
      out.tags.push_back(tris.tags[t]);
    }
  }
  return out;
}

QuadRule2D tag_points(QuadRule2D rule, const Polygon& poly) {
  rule.tag_names.clear();
  rule.tag_names.push_back("");
  std::unordered_map<std::string, int> index;
  index[""] = 0;
  rule.tags.assign(rule.points.size(), 0);
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    const std::string tag{poly.subregion_tag(rule.points[i])};
    auto [it, inserted] = index.try_emplace(tag, static_cast<int>(rule.tag_names.size()));
    if (inserted) rule.tag_names.push_back(tag);
    rule.tags[i] = it->second;
  }
  return rule;
}

}  // namespace certify
