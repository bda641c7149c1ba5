#include "certify/catalog.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "certify/adf.hpp"
#include "certify/errors.hpp"
#include "certify/mlp.hpp"

namespace certify {

namespace {

constexpr double kParamTol = 1e-9;

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return v;
}

CatalogEntry make_sawblade() {
  CatalogEntry e;
  e.id = "sawblade";
  e.summary =
      "piecewise diffusion on a saw-blade domain: blade (0,4)x(0,1/2) with 8 "
      "triangular teeth on top; A = [mu1 on teeth, mu2 on blade] * diag(1,2), f = 1";
  e.param_dim = 2;

  e.problem.A = [](const Vec2&, std::string_view tag, Params mu) {
    const double coef = tag == "omega1" ? mu[0] : mu[1];
    return (coef * Eigen::Vector2d(1.0, 2.0)).asDiagonal().toDenseMatrix();
  };
  e.problem.b = [](const Vec2&, std::string_view, Params) { return Vec2(0.0, 0.0); };
  e.problem.c = [](const Vec2&, std::string_view, Params) { return 0.0; };
  e.problem.f = [](const Vec2&, std::string_view, Params) { return 1.0; };
  e.problem.bounds = [](Params mu) {
    CoefficientBounds cb;
    cb.a0 = std::min(mu[0], mu[1]);
    cb.normA = 2.0 * std::max(mu[0], mu[1]);
    return cb;
  };
  e.problem.valid_params = [](Params mu) {
    return mu[0] >= 0.1 - kParamTol && mu[0] <= 1.0 + kParamTol && mu[1] >= 0.05 - kParamTol &&
           mu[1] <= 0.1 + kParamTol;
  };
  e.problem.param_dim = 2;

  e.embedding = [](Params) {
    return Embedding(Rect(0.0, 4.0, 0.0, 0.5), sawblade_domain(8, 0.5, 0.5, 4.0),
                     Rect(0.0, 4.0, 0.0, 1.0));
  };

  for (double m1 : linspace(0.1, 1.0, 4))
    for (double m2 : linspace(0.05, 0.1, 4)) e.default_params.push_back({m1, m2});
  return e;
}

CatalogEntry make_notch() {
  CatalogEntry e;
  e.id = "notch";
  e.summary =
      "convection-diffusion-reaction on a unit square with a triangular recess of "
      "opening angle mu in the bottom edge; A = [[1/2,1/4],[1/4,1/2]], b = (10,-3), "
      "c = xy+1, f = 10";
  e.param_dim = 1;

  e.problem.A = [](const Vec2&, std::string_view, Params) {
    Eigen::Matrix2d A;
    A << 0.5, 0.25, 0.25, 0.5;
    return A;
  };
  e.problem.b = [](const Vec2&, std::string_view, Params) { return Vec2(10.0, -3.0); };
  e.problem.c = [](const Vec2& p, std::string_view, Params) { return p.x() * p.y() + 1.0; };
  e.problem.f = [](const Vec2&, std::string_view, Params) { return 10.0; };
  e.problem.bounds = [](Params) {
    CoefficientBounds cb;
    cb.a0 = 0.25;                      // lambda_min of A; b is constant, c >= 0
    cb.normA = 0.75;                   // lambda_max of A
    cb.normB = std::sqrt(109.0);       // |(10,-3)|
    cb.normC = 2.0;                    // max of xy+1 on the unit square
    return cb;
  };
  e.problem.valid_params = [](Params mu) {
    return mu[0] >= -kParamTol && mu[0] <= 0.5 * M_PI + kParamTol;
  };
  e.problem.param_dim = 1;

  e.embedding = [](Params mu) {
    return Embedding(Rect(0.0, 1.0, 0.25, 1.0), notched_square(mu[0]), Rect(0.0, 1.0, 0.0, 1.0));
  };

  for (double m : linspace(0.0, 0.5 * M_PI, 9)) e.default_params.push_back({m});
  return e;
}

CatalogEntry make_heat_square() {
  CatalogEntry e;
  e.id = "heat-square";
  e.summary =
      "heat equation on the unit square (coincident inner/outer rectangles), T = 1, "
      "manufactured source so that u(t) = t * bump is the exact solution";
  e.param_dim = 0;
  e.parabolic = true;

  e.problem = EllipticProblem::laplace();
  auto bump = std::make_shared<BumpField>(Rect(0.0, 1.0, 0.0, 1.0));

  SpaceTimeProblem st;
  st.spatial = e.problem;
  st.T = 1.0;
  st.source = [bump](double t, const Vec2& p, std::string_view, Params) {
    return bump->value(p, {}) - t * bump->laplacian(p);
  };
  e.spacetime = st;

  e.embedding = [](Params) {
    const Rect square(0.0, 1.0, 0.0, 1.0);
    Polygon domain({Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)});
    return Embedding(square, domain, square);
  };
  e.default_params.push_back({});
  return e;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {make_sawblade(), make_notch(),
                                                    make_heat_square()};
  return entries;
}

/// Raw field times the ADF of the (possibly parameter-dependent) domain; the
/// distance function is cached per parameter value so sweeps pay for the
/// geometry once per row.
class MaskedParametricField : public Field {
 public:
  MaskedParametricField(std::shared_ptr<const Field> raw, std::function<Embedding(Params)> emb)
      : raw_(std::move(raw)), emb_(std::move(emb)) {}

  double value(const Vec2& p, Params mu) const override {
    return adf_for(mu)->value(p) * raw_->value(p, mu);
  }

  Vec2 gradient(const Vec2& p, Params mu) const override {
    const auto adf = adf_for(mu);
    return adf->value(p) * raw_->gradient(p, mu) + raw_->value(p, mu) * adf->gradient(p);
  }

 private:
  std::shared_ptr<const ADF> adf_for(Params mu) const {
    std::vector<double> key(mu.begin(), mu.end());
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(std::move(key), build_adf(emb_(mu).domain)).first;
    return it->second;
  }

  std::shared_ptr<const Field> raw_;
  std::function<Embedding(Params)> emb_;
  mutable std::mutex mutex_;
  mutable std::map<std::vector<double>, std::shared_ptr<const ADF>> cache_;
};

std::shared_ptr<Field> zero_field() {
  return std::make_shared<AnalyticField>([](const Vec2&, Params) { return 0.0; },
                                         [](const Vec2&, Params) { return Vec2(0.0, 0.0); });
}

std::shared_ptr<Field> perturbed_raw() {
  return std::make_shared<AnalyticField>(
      [](const Vec2& p, Params mu) {
        const double m = mu.empty() ? 0.0 : mu[0];
        return std::sin(3.0 * p.x() + m) * std::cos(2.0 * p.y()) + 0.5;
      },
      [](const Vec2& p, Params mu) {
        const double m = mu.empty() ? 0.0 : mu[0];
        return Vec2(3.0 * std::cos(3.0 * p.x() + m) * std::cos(2.0 * p.y()),
                    -2.0 * std::sin(3.0 * p.x() + m) * std::sin(2.0 * p.y()));
      });
}

}  // namespace

const CatalogEntry& catalog_lookup(const std::string& id) {
  for (const CatalogEntry& e : catalog()) {
    if (e.id == id) return e;
  }
  std::string msg = "unknown problem '" + id + "'; catalog:";
  for (const CatalogEntry& e : catalog()) msg += " " + e.id;
  throw ConfigError(msg);
}

std::vector<std::string> catalog_ids() {
  std::vector<std::string> ids;
  for (const CatalogEntry& e : catalog()) ids.push_back(e.id);
  return ids;
}

FieldChoice catalog_field(const CatalogEntry& entry, const std::string& field_id) {
  if (field_id == "zero") return {zero_field(), false};
  if (field_id == "perturbed") {
    return {std::make_shared<MaskedParametricField>(perturbed_raw(), entry.embedding), false};
  }
  if (field_id == "truth-minus-bump") {
    // With the source zeroed the exact solution is u = 0, so the error field
    // is exactly the unit-seminorm bump on the inner rectangle.
    const Rect inner = entry.embedding(Params(entry.default_params.front())).inner;
    return {std::make_shared<ScaledField>(bump_field(inner), -1.0), true};
  }
  if (field_id.rfind("mlp:", 0) == 0) {
    auto raw = std::make_shared<MlpField>(mlp_load(field_id.substr(4)));
    return {std::make_shared<MaskedParametricField>(raw, entry.embedding), false};
  }
  throw ConfigError("unknown field '" + field_id +
                    "'; options: zero, perturbed, truth-minus-bump, mlp:<weights.json>");
}

std::shared_ptr<SpaceTimeField> catalog_spacetime_field(const CatalogEntry& entry,
                                                        const std::string& field_id) {
  if (!entry.parabolic) throw ConfigError("'" + entry.id + "' is not a space-time problem");
  if (field_id == "zero") {
    return std::make_shared<SeparableSpaceTimeField>([](double) { return 0.0; },
                                                     [](double) { return 0.0; }, zero_field());
  }
  if (field_id == "heat-truth") {
    const Rect inner = entry.embedding(Params(entry.default_params.front())).inner;
    return std::make_shared<SeparableSpaceTimeField>([](double t) { return t; },
                                                     [](double) { return 1.0; }, bump_field(inner));
  }
  throw ConfigError("unknown space-time field '" + field_id + "'; options: zero, heat-truth");
}

}  // namespace certify
