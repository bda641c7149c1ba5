#include "certify/adf.hpp"

#include <cmath>
#include <limits>

namespace certify {

namespace {

// Distance from p to segment [a,b] and its gradient w.r.t. p. At zero
// distance the gradient degenerates; callers guard that case.
double segment_distance(const Vec2& a, const Vec2& b, const Vec2& p, Vec2& grad) {
  const Vec2 d = b - a;
  const double len2 = d.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Vec2 closest = a + t * d;
  const Vec2 diff = p - closest;
  const double dist = diff.norm();
  grad = dist > 1e-300 ? Vec2(diff / dist) : Vec2(0.0, 0.0);
  return dist;
}

}  // namespace

ADF::ADF(const Polygon& poly) : poly_(poly) {
  const Ring& ring = poly.outer;
  if (ring.size() < 3) throw InvalidGeometryError("ADF: polygon needs at least 3 vertices");
  for (std::size_t i = 0; i < ring.size(); ++i) {
    edges_.push_back({ring[i], ring[(i + 1) % ring.size()]});
  }
}

double ADF::value(const Vec2& p) const {
  // phi = (sum phi_i^{-2})^{-1/2}; any zero edge distance forces phi = 0.
  double acc = 0.0;
  for (const Edge& e : edges_) {
    Vec2 g;
    const double di = segment_distance(e.a, e.b, p, g);
    if (di <= 0.0) return 0.0;
    acc += 1.0 / (di * di);
  }
  return 1.0 / std::sqrt(acc);
}

Vec2 ADF::gradient(const Vec2& p) const {
  // grad phi = phi^3 * sum phi_i^{-3} grad phi_i away from the boundary.
  double acc = 0.0;
  Vec2 gacc(0.0, 0.0);
  double min_dist = std::numeric_limits<double>::infinity();
  Vec2 min_grad(0.0, 0.0);
  for (const Edge& e : edges_) {
    Vec2 g;
    const double di = segment_distance(e.a, e.b, p, g);
    if (di < min_dist) {
      min_dist = di;
      min_grad = g;
    }
    if (di <= 1e-14) continue;
    acc += 1.0 / (di * di);
    gacc += g / (di * di * di);
  }
  if (min_dist <= 1e-14) {
    // On the boundary phi behaves like the distance to the nearest edge.
    return min_grad;
  }
  const double phi = 1.0 / std::sqrt(acc);
  return phi * phi * phi * gacc;
}

std::shared_ptr<ADF> build_adf(const Polygon& poly) { return std::make_shared<ADF>(poly); }

namespace {

class MaskedField : public Field {
 public:
  MaskedField(std::shared_ptr<const Field> raw, std::shared_ptr<const ADF> adf)
      : raw_(std::move(raw)), adf_(std::move(adf)) {}

  double value(const Vec2& p, Params mu) const override { return adf_->value(p) * raw_->value(p, mu); }

  Vec2 gradient(const Vec2& p, Params mu) const override {
    return adf_->value(p) * raw_->gradient(p, mu) + raw_->value(p, mu) * adf_->gradient(p);
  }

 private:
  std::shared_ptr<const Field> raw_;
  std::shared_ptr<const ADF> adf_;
};

}  // namespace

std::shared_ptr<Field> masked_field(std::shared_ptr<const Field> raw, std::shared_ptr<const ADF> adf) {
  return std::make_shared<MaskedField>(std::move(raw), std::move(adf));
}

}  // namespace certify
