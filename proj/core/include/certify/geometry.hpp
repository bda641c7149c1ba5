#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "certify/errors.hpp"

namespace certify {

using Vec2 = Eigen::Vector2d;
using Ring = std::vector<Vec2>;  // counter-clockwise, no repeated closing vertex

/// Axis-aligned rectangle, the "simple" domain for spectral test spaces.
struct Rect {
  double x0, x1, y0, y1;

  Rect(double x0_, double x1_, double y0_, double y1_);
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  Vec2 center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  bool contains(const Vec2& p, double tol = 0.0) const {
    return p.x() >= x0 - tol && p.x() <= x1 + tol && p.y() >= y0 - tol && p.y() <= y1 + tol;
  }
};

/// Simple polygon with optional named subregions partitioning it.
/// A subregion may consist of several disjoint pieces (e.g. all saw teeth
/// share one material tag).
struct Polygon {
  struct Subregion {
    std::string name;
    std::vector<Ring> pieces;
  };

  Ring outer;
  std::vector<Subregion> subregions;

  Polygon() = default;
  explicit Polygon(Ring boundary, std::vector<Subregion> subs = {});

  double area() const;
  /// Tag of the subregion containing p, or "" if none (or no subregions).
  std::string_view subregion_tag(const Vec2& p) const;
};

double ring_area(const Ring& r);  // signed (shoelace)

/// Even-odd point-in-polygon test on the outer boundary. Points within
/// 1e-12 of an edge count as inside.
bool point_in_polygon(const Polygon& poly, const Vec2& p);
bool point_in_ring(const Ring& ring, const Vec2& p);

struct Triangle {
  Vec2 a, b, c;
  double area() const { return 0.5 * ((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x()); }
  Vec2 centroid() const { return (a + b + c) / 3.0; }
};

struct Triangulation {
  std::vector<std::string> tag_names;      // index 0 reserved for ""
  std::vector<Triangle> triangles;
  std::vector<int> tags;                   // parallel to triangles
  double total_area() const;
};

/// Ear-clipping triangulation. Subregions, when present, must partition the
/// polygon; each is triangulated independently so every triangle carries its
/// subregion tag.
Triangulation triangulate(const Polygon& poly);

/// Midpoint subdivision, each triangle into 4 congruent children per level.
Triangulation refine(const Triangulation& tris, int levels);

/// The embedding triple: inner rect, polygonal domain, outer rect.
struct Embedding {
  Rect inner;
  Polygon domain;
  Rect outer;

  Embedding(Rect inner_, Polygon domain_, Rect outer_);
};

/// Saw-blade domain: a blade rectangle (0,length)x(0,blade_height) carrying
/// n_teeth isoceles triangular teeth of height tooth_height on its top edge.
/// Teeth are centered in equal pitch cells; tooth_base defaults to
/// length/n_teeth so the teeth tile the top edge. Subregions: "omega1"
/// (teeth), "omega2" (blade).
Polygon sawblade_domain(int n_teeth, double blade_height, double tooth_height, double length,
                        std::optional<double> tooth_base = std::nullopt);

/// Unit square with a triangular recess of opening angle mu cut into the
/// bottom edge, symmetric about x = 0.5 with apex at (0.5, 0.25). mu = 0
/// returns the plain square. The rect (0,1)x(0.25,1) fits inside for all mu.
Polygon notched_square(double mu);

/// Sharp Poincare constant s_PF with ||u||_L2 <= s_PF |u|_H1 on the rectangle,
/// an upper bound for any subdomain by zero extension.
double poincare_bound(const Rect& outer);

}  // namespace certify
