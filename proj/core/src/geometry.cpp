#include "certify/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace certify {

namespace {

constexpr double kEdgeTol = 1e-12;

double dist_point_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

// Proper or improper intersection of open segments, used for the simplicity check.
bool segments_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  auto orient = [](const Vec2& a, const Vec2& b, const Vec2& c) {
    const double v = (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
    if (v > kEdgeTol) return 1;
    if (v < -kEdgeTol) return -1;
    return 0;
  };
  const int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
  const int o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
  return o1 != o2 && o3 != o4;
}

void validate_ring(const Ring& r) {
  if (r.size() < 3) throw InvalidGeometryError("polygon needs at least 3 vertices");
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i) {
    if ((r[i] - r[(i + 1) % n]).norm() < kEdgeTol)
      throw InvalidGeometryError("repeated consecutive polygon vertices");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent, shares vertex
      if (segments_intersect(r[i], r[(i + 1) % n], r[j], r[(j + 1) % n]))
        throw InvalidGeometryError("self-intersecting polygon");
    }
  }
}

Ring ccw(Ring r) {
  if (ring_area(r) < 0.0) std::reverse(r.begin(), r.end());
  return r;
}

// Closed containment: points exactly on the candidate triangle's boundary
// (e.g. a reflex vertex on the ear diagonal) must block the ear, otherwise
// clipping can produce overlapping or inverted triangles.
bool point_blocks_ear(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
  auto side = [&](const Vec2& u, const Vec2& v) {
    return (v - u).x() * (p - u).y() - (v - u).y() * (p - u).x();
  };
  return side(a, b) >= -kEdgeTol && side(b, c) >= -kEdgeTol && side(c, a) >= -kEdgeTol;
}

void ear_clip(const Ring& input, const std::string& tag_name, Triangulation& out, int tag) {
  Ring r = ccw(input);
  validate_ring(r);
  std::vector<std::size_t> idx(r.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;

  auto is_ear = [&](std::size_t k) {
    const std::size_t n = idx.size();
    const Vec2& a = r[idx[(k + n - 1) % n]];
    const Vec2& b = r[idx[k]];
    const Vec2& c = r[idx[(k + 1) % n]];
    const double cross = (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
    if (cross <= kEdgeTol) return false;  // reflex or degenerate corner
    for (std::size_t m = 0; m < n; ++m) {
      if (m == (k + n - 1) % n || m == k || m == (k + 1) % n) continue;
      if (point_blocks_ear(r[idx[m]], a, b, c)) return false;
    }
    return true;
  };

  std::size_t guard = 0;
  while (idx.size() > 3) {
    const std::size_t n = idx.size();
    bool clipped = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (!is_ear(k)) continue;
      const Vec2& a = r[idx[(k + n - 1) % n]];
      const Vec2& b = r[idx[k]];
      const Vec2& c = r[idx[(k + 1) % n]];
      out.triangles.push_back({a, b, c});
      out.tags.push_back(tag);
      idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(k));
      clipped = true;
      break;
    }
    if (!clipped || ++guard > 4 * r.size())
      throw InvalidGeometryError("ear clipping failed on polygon '" + tag_name + "'");
  }
  out.triangles.push_back({r[idx[0]], r[idx[1]], r[idx[2]]});
  out.tags.push_back(tag);
}

}  // namespace

Rect::Rect(double x0_, double x1_, double y0_, double y1_) : x0(x0_), x1(x1_), y0(y0_), y1(y1_) {
  if (!(x0 < x1) || !(y0 < y1)) throw InvalidGeometryError("rect requires x0 < x1 and y0 < y1");
}

double ring_area(const Ring& r) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Vec2& p = r[i];
    const Vec2& q = r[(i + 1) % r.size()];
    s += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * s;
}

Polygon::Polygon(Ring boundary, std::vector<Subregion> subs)
    : outer(ccw(std::move(boundary))), subregions(std::move(subs)) {
  validate_ring(outer);
  for (auto& sub : subregions)
    for (auto& piece : sub.pieces) {
      piece = ccw(std::move(piece));
      validate_ring(piece);
    }
}

double Polygon::area() const { return ring_area(outer); }

std::string_view Polygon::subregion_tag(const Vec2& p) const {
  for (const auto& sub : subregions)
    for (const auto& piece : sub.pieces)
      if (point_in_ring(piece, p)) return sub.name;
  return {};
}

bool point_in_ring(const Ring& ring, const Vec2& p) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i)
    if (dist_point_segment(p, ring[i], ring[(i + 1) % n]) <= kEdgeTol) return true;  // tie: inside
  bool inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = ring[i];
    const Vec2& b = ring[(i + 1) % n];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x_cross = a.x() + (p.y() - a.y()) / (b.y() - a.y()) * (b.x() - a.x());
      if (x_cross > p.x()) inside = !inside;
    }
  }
  return inside;
}

bool point_in_polygon(const Polygon& poly, const Vec2& p) {
  validate_ring(poly.outer);
  return point_in_ring(poly.outer, p);
}

double Triangulation::total_area() const {
  double s = 0.0;
  for (const auto& t : triangles) s += t.area();
  return s;
}

Triangulation triangulate(const Polygon& poly) {
  Triangulation out;
  out.tag_names.push_back("");
  if (poly.subregions.empty()) {
    ear_clip(poly.outer, "outer", out, 0);
  } else {
    double covered = 0.0;
    for (const auto& sub : poly.subregions) {
      out.tag_names.push_back(sub.name);
      const int tag = static_cast<int>(out.tag_names.size()) - 1;
      for (const auto& piece : sub.pieces) {
        ear_clip(piece, sub.name, out, tag);
        covered += std::abs(ring_area(piece));
      }
    }
    const double total = poly.area();
    if (std::abs(covered - total) > 1e-10 * std::max(1.0, total))
      throw InvalidGeometryError("subregions do not partition the polygon");
  }
  const double err = std::abs(out.total_area() - poly.area());
  if (err > 1e-10 * std::max(1.0, poly.area()))
    throw InvalidGeometryError("triangulation does not conserve area");
  return out;
}

Triangulation refine(const Triangulation& tris, int levels) {
  if (levels < 0) throw InvalidGeometryError("refine levels must be >= 0");
  Triangulation cur = tris;
  for (int l = 0; l < levels; ++l) {
    Triangulation next;
    next.tag_names = cur.tag_names;
    next.triangles.reserve(cur.triangles.size() * 4);
    next.tags.reserve(cur.tags.size() * 4);
    for (std::size_t i = 0; i < cur.triangles.size(); ++i) {
      const auto& t = cur.triangles[i];
      const Vec2 ab = 0.5 * (t.a + t.b), bc = 0.5 * (t.b + t.c), ca = 0.5 * (t.c + t.a);
      const int tag = cur.tags[i];
      for (const Triangle& child :
           {Triangle{t.a, ab, ca}, Triangle{ab, t.b, bc}, Triangle{ca, bc, t.c}, Triangle{ab, bc, ca}}) {
        next.triangles.push_back(child);
        next.tags.push_back(tag);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

Embedding::Embedding(Rect inner_, Polygon domain_, Rect outer_)
    : inner(inner_), domain(std::move(domain_)), outer(outer_) {
  // inner rect corners and edge-midpoint samples must lie in the domain,
  // every domain vertex must lie in (the closure of) the outer rect.
  auto check_inner = [&](const Vec2& p) {
    if (!point_in_polygon(domain, p))
      throw InvalidGeometryError("inner rect not contained in domain polygon");
  };
  const double xs[3] = {inner.x0, 0.5 * (inner.x0 + inner.x1), inner.x1};
  const double ys[3] = {inner.y0, 0.5 * (inner.y0 + inner.y1), inner.y1};
  for (double x : xs)
    for (double y : ys) check_inner({x, y});
  for (const Vec2& v : domain.outer)
    if (!outer.contains(v, kEdgeTol))
      throw InvalidGeometryError("domain polygon not contained in outer rect");
}

Polygon sawblade_domain(int n_teeth, double blade_height, double tooth_height, double length,
                        std::optional<double> tooth_base) {
  if (n_teeth < 1) throw InvalidGeometryError("sawblade requires n_teeth >= 1");
  if (blade_height <= 0 || tooth_height <= 0 || length <= 0)
    throw InvalidGeometryError("sawblade dimensions must be positive");
  const double pitch = length / n_teeth;
  const double base = tooth_base.value_or(pitch);
  if (base <= 0) throw InvalidGeometryError("tooth base must be positive");
  if (n_teeth * base > length * (1 + 1e-12))
    throw InvalidGeometryError("teeth overlap: n_teeth * base > length");

  const double h = blade_height, t = tooth_height;
  Ring boundary = {{0, 0}, {length, 0}, {length, h}};
  std::vector<Ring> teeth;
  // isoceles teeth centered per pitch cell; top boundary traversed right to left
  for (int i = n_teeth - 1; i >= 0; --i) {
    const double c = (i + 0.5) * pitch;
    const double xl = c - 0.5 * base, xr = c + 0.5 * base;
    if (xr < boundary.back().x() - kEdgeTol) boundary.push_back({xr, h});
    boundary.push_back({c, h + t});
    if (xl > kEdgeTol) boundary.push_back({xl, h});
    teeth.push_back({{xl, h}, {xr, h}, {c, h + t}});
  }
  if (boundary.back().x() > kEdgeTol) boundary.push_back({0, h});

  std::vector<Polygon::Subregion> subs;
  subs.push_back({"omega1", std::move(teeth)});
  subs.push_back({"omega2", {{{0, 0}, {length, 0}, {length, h}, {0, h}}}});
  return Polygon(std::move(boundary), std::move(subs));
}

Polygon notched_square(double mu) {
  if (!(mu >= 0.0) || mu > std::numbers::pi / 2 + 1e-12)
    throw std::domain_error("notch angle must lie in [0, pi/2]");
  constexpr double depth = 0.25;
  const double w = depth * std::tan(0.5 * mu);
  if (w < kEdgeTol) return Polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  return Polygon({{0, 0}, {0.5 - w, 0}, {0.5, depth}, {0.5 + w, 0}, {1, 0}, {1, 1}, {0, 1}});
}

double poincare_bound(const Rect& outer) {
  const double a = outer.width(), b = outer.height();
  const double pi = std::numbers::pi;
  return 1.0 / std::sqrt(pi * pi * (1.0 / (a * a) + 1.0 / (b * b)));
}

}  // namespace certify
