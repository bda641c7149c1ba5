#pragma once

#include <vector>

#include "certify/geometry.hpp"

namespace certify {

/// 1D rule on (-1, 1).
struct QuadRule {
  std::vector<double> points;
  std::vector<double> weights;
  int exactness_degree = 0;
};

/// 2D rule; tags carry the subregion index of each point (empty if untagged).
struct QuadRule2D {
  std::vector<Vec2> points;
  std::vector<double> weights;
  std::vector<int> tags;
  std::vector<std::string> tag_names;
  int exactness_degree = 0;
  // Non-zero for tensor-product rules: points are x-major, nx * ny of them.
  // Structured residual assembly keys off this.
  int tensor_nx = 0;
  int tensor_ny = 0;

  double weight_sum() const;
  std::string_view tag_of(std::size_t i) const {
    return tags.empty() ? std::string_view{} : std::string_view{tag_names[static_cast<std::size_t>(tags[i])]};
  }
};

/// Gauss-Legendre nodes/weights by Newton iteration on the Legendre recurrence.
QuadRule gauss_legendre(int n);

/// Gauss-Lobatto rule including the endpoints; exact to degree 2n-3.
QuadRule gauss_lobatto(int n);

/// Affine-mapped tensor product of two 1D rules on a rectangle.
QuadRule2D tensor_rule(const QuadRule& rule_x, const QuadRule& rule_y, const Rect& rect);

/// Rule exact for total degree <= order on a triangle, via a collapsed
/// (Duffy) mapping of a tensor Gauss rule.
QuadRule2D triangle_rule(int order, const Triangle& tri);

/// Union of triangle rules over the refined triangulation of the polygon,
/// each point tagged with its triangle's subregion.
QuadRule2D polygon_rule(const Polygon& poly, int order, int refine_levels);

/// Tag the points of a rule with the subregions of poly (for tensor rules on
/// an inner rect sitting inside a partitioned domain).
QuadRule2D tag_points(QuadRule2D rule, const Polygon& poly);

}  // namespace certify
