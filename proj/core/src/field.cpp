#include "certify/field.hpp"

#include <cmath>

#include "certify/quadrature.hpp"

namespace certify {

namespace {

// raw bump factors in one direction: q(s) = ((s - s0)(s1 - s))^2
double q(double s, double s0, double s1) {
  const double u = (s - s0) * (s1 - s);
  return u * u;
}
double dq(double s, double s0, double s1) {
  const double u = (s - s0) * (s1 - s);
  return 2.0 * u * (s0 + s1 - 2.0 * s);
}
double ddq(double s, double s0, double s1) {
  const double u = (s - s0) * (s1 - s);
  const double du = s0 + s1 - 2.0 * s;
  return 2.0 * (du * du - 2.0 * u);
}

}  // namespace

BumpField::BumpField(const Rect& inner) : rect_(inner), scale_(1.0) {
  // normalize the H1 seminorm over the support by exact quadrature
  const QuadRule g = gauss_legendre(8);
  const QuadRule2D rule = tensor_rule(g, g, rect_);
  double h1 = 0.0;
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    const Vec2& p = rule.points[i];
    const double gx = dq(p.x(), rect_.x0, rect_.x1) * q(p.y(), rect_.y0, rect_.y1);
    const double gy = q(p.x(), rect_.x0, rect_.x1) * dq(p.y(), rect_.y0, rect_.y1);
    h1 += rule.weights[i] * (gx * gx + gy * gy);
  }
  scale_ = 1.0 / std::sqrt(h1);
}

double BumpField::value(const Vec2& p, Params) const {
  if (!rect_.contains(p)) return 0.0;
  return scale_ * q(p.x(), rect_.x0, rect_.x1) * q(p.y(), rect_.y0, rect_.y1);
}

Vec2 BumpField::gradient(const Vec2& p, Params) const {
  if (!rect_.contains(p)) return Vec2::Zero();
  return {scale_ * dq(p.x(), rect_.x0, rect_.x1) * q(p.y(), rect_.y0, rect_.y1),
          scale_ * q(p.x(), rect_.x0, rect_.x1) * dq(p.y(), rect_.y0, rect_.y1)};
}

double BumpField::laplacian(const Vec2& p) const {
  if (!rect_.contains(p)) return 0.0;
  return scale_ * (ddq(p.x(), rect_.x0, rect_.x1) * q(p.y(), rect_.y0, rect_.y1) +
                   q(p.x(), rect_.x0, rect_.x1) * ddq(p.y(), rect_.y0, rect_.y1));
}

std::shared_ptr<Field> bump_field(const Rect& inner) { return std::make_shared<BumpField>(inner); }

}  // namespace certify
