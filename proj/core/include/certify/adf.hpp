#pragma once

#include <memory>

#include "certify/field.hpp"
#include "certify/geometry.hpp"

namespace certify {

/// Approximate distance function of a simple polygon: zero exactly on the
/// boundary, positive inside, built from per-edge distances combined by
/// R-equivalence composition phi = (sum phi_i^{-2})^{-1/2}.
class ADF {
 public:
  explicit ADF(const Polygon& poly);

  double value(const Vec2& p) const;
  Vec2 gradient(const Vec2& p) const;
  const Polygon& polygon() const { return poly_; }

 private:
  Polygon poly_;
  struct Edge {
    Vec2 a, b;
  };
  std::vector<Edge> edges_;
};

std::shared_ptr<ADF> build_adf(const Polygon& poly);

/// phi(x) * raw(x): zero trace enforced by the distance function; gradient by
/// product rule.
std::shared_ptr<Field> masked_field(std::shared_ptr<const Field> raw, std::shared_ptr<const ADF> adf);

}  // namespace certify
