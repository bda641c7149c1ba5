#pragma once

#include <functional>
#include <memory>
#include <span>

#include "certify/geometry.hpp"

namespace certify {

using Params = std::span<const double>;

/// Black-box approximant under certification: point values and exact spatial
/// gradients, possibly parameter-dependent.
class Field {
 public:
  virtual double value(const Vec2& p, Params mu) const = 0;
  virtual Vec2 gradient(const Vec2& p, Params mu) const = 0;
  virtual ~Field() = default;
};

/// Time-dependent counterpart for space-time problems.
class SpaceTimeField {
 public:
  virtual double value(double t, const Vec2& p, Params mu) const = 0;
  virtual Vec2 gradient(double t, const Vec2& p, Params mu) const = 0;
  virtual double time_derivative(double t, const Vec2& p, Params mu) const = 0;
  virtual ~SpaceTimeField() = default;
};

/// Field defined by user lambdas (analytic test fields).
class AnalyticField : public Field {
 public:
  using ValueFn = std::function<double(const Vec2&, Params)>;
  using GradFn = std::function<Vec2(const Vec2&, Params)>;
  AnalyticField(ValueFn v, GradFn g) : value_(std::move(v)), grad_(std::move(g)) {}
  double value(const Vec2& p, Params mu) const override { return value_(p, mu); }
  Vec2 gradient(const Vec2& p, Params mu) const override { return grad_(p, mu); }

 private:
  ValueFn value_;
  GradFn grad_;
};

/// Tensor polynomial bump ((x-x0)(x1-x)(y-y0)(y1-y))^2 supported in a
/// rectangle, normalized to unit H1 seminorm over it; zero outside.
class BumpField : public Field {
 public:
  explicit BumpField(const Rect& inner);
  double value(const Vec2& p, Params mu) const override;
  Vec2 gradient(const Vec2& p, Params mu) const override;
  /// Laplacian (analytic), for manufactured parabolic sources.
  double laplacian(const Vec2& p) const;
  const Rect& support() const { return rect_; }

 private:
  Rect rect_;
  double scale_;
};

std::shared_ptr<Field> bump_field(const Rect& inner);

/// alpha * field, convenient for scaling-equivariance checks.
class ScaledField : public Field {
 public:
  ScaledField(std::shared_ptr<const Field> base, double alpha) : base_(std::move(base)), alpha_(alpha) {}
  double value(const Vec2& p, Params mu) const override { return alpha_ * base_->value(p, mu); }
  Vec2 gradient(const Vec2& p, Params mu) const override { return alpha_ * base_->gradient(p, mu); }

 private:
  std::shared_ptr<const Field> base_;
  double alpha_;
};

/// sigma(t) * e(x) with analytic sigma', for separable space-time fields.
class SeparableSpaceTimeField : public SpaceTimeField {
 public:
  SeparableSpaceTimeField(std::function<double(double)> sigma, std::function<double(double)> dsigma,
                          std::shared_ptr<const Field> spatial)
      : sigma_(std::move(sigma)), dsigma_(std::move(dsigma)), spatial_(std::move(spatial)) {}
  double value(double t, const Vec2& p, Params mu) const override { return sigma_(t) * spatial_->value(p, mu); }
  Vec2 gradient(double t, const Vec2& p, Params mu) const override { return sigma_(t) * spatial_->gradient(p, mu); }
  double time_derivative(double t, const Vec2& p, Params mu) const override {
    return dsigma_(t) * spatial_->value(p, mu);
  }

 private:
  std::function<double(double)> sigma_, dsigma_;
  std::shared_ptr<const Field> spatial_;
};

}  // namespace certify
