#include "certify/certify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

#include "certify/errors.hpp"

namespace certify {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Spectral spaces, Gram factorizations and quadrature rules depend only on
// geometry and resolution, not on the parameter, so sweeps share them.
struct InnerPrep {
  SpectralSpace space;
  GramSystem gram;
  QuadRule2D quad;
};

struct OuterPrep {
  SpectralSpace space;
  GramSystem gram;
  QuadRule2D quad;
};

void append_rect(std::vector<double>& blob, const Rect& r) {
  blob.insert(blob.end(), {r.x0, r.x1, r.y0, r.y1});
}

std::vector<double> geometry_key(const Embedding& emb, const Resolution& res) {
  std::vector<double> blob = {static_cast<double>(res.order), static_cast<double>(res.inner_quad),
                              static_cast<double>(res.triangle_order),
                              static_cast<double>(res.refine_levels)};
  append_rect(blob, emb.inner);
  append_rect(blob, emb.outer);
  for (const Vec2& v : emb.domain.outer) blob.insert(blob.end(), {v.x(), v.y()});
  for (const auto& sub : emb.domain.subregions) {
    blob.push_back(static_cast<double>(std::hash<std::string>{}(sub.name)));
    for (const Ring& ring : sub.pieces)
      for (const Vec2& v : ring) blob.insert(blob.end(), {v.x(), v.y()});
  }
  return blob;
}

template <typename Prep, typename Build>
std::shared_ptr<const Prep> cached_prep(const Embedding& emb, const Resolution& res, Build&& build) {
  static std::mutex mutex;
  static std::map<std::vector<double>, std::shared_ptr<const Prep>> cache;
  const std::vector<double> key = geometry_key(emb, res);
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto prep = std::make_shared<const Prep>(build());
  std::lock_guard<std::mutex> lock(mutex);
  if (cache.size() > 64) cache.clear();
  return cache.emplace(key, std::move(prep)).first->second;
}

std::shared_ptr<const InnerPrep> inner_prep(const Embedding& emb, const Resolution& res) {
  return cached_prep<InnerPrep>(emb, res, [&] {
    SpectralSpace space(emb.inner, res.order, res.order);
    GramSystem gram(space);
    const QuadRule gl = gauss_legendre(res.inner_quad);
    QuadRule2D quad = tag_points(tensor_rule(gl, gl, emb.inner), emb.domain);
    return InnerPrep{std::move(space), std::move(gram), std::move(quad)};
  });
}

std::shared_ptr<const OuterPrep> outer_prep(const Embedding& emb, const Resolution& res) {
  return cached_prep<OuterPrep>(emb, res, [&] {
    SpectralSpace space(emb.outer, res.order, res.order);
    GramSystem gram(space);
    QuadRule2D quad = polygon_rule(emb.domain, res.triangle_order, res.refine_levels);
    return OuterPrep{std::move(space), std::move(gram), std::move(quad)};
  });
}

void check_finite(const BoundReport& r) {
  if (!std::isfinite(r.dual_inner) || !std::isfinite(r.dual_outer)) {
    throw NumericalError("non-finite dual norm (inner=" + std::to_string(r.dual_inner) +
                         ", outer=" + std::to_string(r.dual_outer) + ")");
  }
}

}  // namespace

StabilityConstants elliptic_constants(double a0, double normA, double normB, double normC,
                                      double s_PF) {
  if (a0 <= 0.0) throw ConfigError("problem is not coercive: a0 <= 0");
  if (normA < 0.0 || normB < 0.0 || normC < 0.0 || s_PF < 0.0) {
    throw ConfigError("coefficient bounds must be non-negative");
  }
  StabilityConstants sc;
  sc.a0 = a0;
  sc.normA = normA;
  sc.normB = normB;
  sc.normC = normC;
  sc.s_PF = s_PF;
  sc.c_B = 1.0 / (normA + s_PF * normB + s_PF * s_PF * normC);
  sc.C_B = 1.0 / a0;
  sc.provenance = "analytic-elliptic";
  return sc;
}

BoundReport certify_elliptic(const EllipticProblem& problem, const Field& field, Params mu,
                             const Embedding& embedding, const Resolution& res) {
  problem.check_params(mu);
  const CoefficientBounds cb = problem.bounds(mu);
  const StabilityConstants sc =
      elliptic_constants(cb.a0, cb.normA, cb.normB, cb.normC, poincare_bound(embedding.outer));

  BoundReport r;
  r.mu.assign(mu.begin(), mu.end());

  auto t0 = std::chrono::steady_clock::now();
  {
    const auto prep = inner_prep(embedding, res);
    const FunctionalVector Fin = elliptic_residual_inner(problem, field, mu, prep->space, prep->quad);
    r.dual_inner = prep->gram.dual_norm(Fin.F).first;
  }
  r.t_inner_s = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  {
    const auto prep = outer_prep(embedding, res);
    const FunctionalVector Fout = elliptic_residual_outer(problem, field, mu, prep->space, prep->quad);
    r.dual_outer = prep->gram.dual_norm(Fout.F).first;
  }
  r.t_outer_s = seconds_since(t0);

  r.lower_bound = sc.c_B * r.dual_inner;
  r.upper_bound = sc.C_B * r.dual_outer;
  check_finite(r);
  return r;
}

BoundReport certify_parabolic(const SpaceTimeProblem& problem, const SpaceTimeField& field, Params mu,
                              const Embedding& embedding, const Resolution& res,
                              const StabilityConstants& constants) {
  if (!(constants.c_B > 0.0) || !(constants.C_B >= constants.c_B)) {
    throw ConfigError(
        "parabolic certification needs user-supplied stability constants with 0 < c_B <= C_B");
  }
  problem.spatial.check_params(mu);

  BoundReport r;
  r.mu.assign(mu.begin(), mu.end());
  const QuadRule time_rule = gauss_legendre(res.time_points);

  auto t0 = std::chrono::steady_clock::now();
  {
    const auto prep = inner_prep(embedding, res);
    r.dual_inner = spacetime_dual_norm(problem, field, mu, prep->gram, prep->quad, time_rule);
  }
  r.t_inner_s = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  {
    const auto prep = outer_prep(embedding, res);
    r.dual_outer = spacetime_dual_norm(problem, field, mu, prep->gram, prep->quad, time_rule);
  }
  r.t_outer_s = seconds_since(t0);

  r.lower_bound = constants.c_B * r.dual_inner;
  r.upper_bound = constants.C_B * r.dual_outer;
  check_finite(r);
  return r;
}

std::vector<BoundReport> sweep(const EllipticProblem& problem, const Field& field,
                               const std::vector<std::vector<double>>& params,
                               const std::function<Embedding(Params)>& embedding,
                               const Resolution& res, const ReferenceOracle& oracle, int workers) {
  if (params.empty()) throw ConfigError("sweep needs a non-empty parameter list");
  std::vector<BoundReport> reports(params.size());

  auto run_one = [&](std::size_t k) {
    BoundReport& r = reports[k];
    r.param_index = static_cast<int>(k);
    r.mu = params[k];
    try {
      const Params mu(params[k]);
      r = certify_elliptic(problem, field, mu, embedding(mu), res);
      r.param_index = static_cast<int>(k);
      if (oracle) {
        r.ref_error = oracle(mu, r.t_oracle_s);
        if (*r.ref_error > 0.0) {
          r.eff_lower = r.lower_bound / *r.ref_error;
          r.eff_upper = r.upper_bound / *r.ref_error;
        }
      }
    } catch (const std::exception& e) {
      r.error = e.what();  // fail-soft: keep going with the other rows
    }
  };

  const int n_workers = std::max(1, std::min<int>(workers, static_cast<int>(params.size())));
  if (n_workers == 1) {
    for (std::size_t k = 0; k < params.size(); ++k) run_one(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next.fetch_add(1); k < params.size(); k = next.fetch_add(1)) run_one(k);
      });
    }
    for (auto& t : pool) t.join();
  }
  return reports;
}

namespace {

std::optional<double> percentile(std::vector<double> v, double frac) {
  if (v.empty()) return std::nullopt;
  std::sort(v.begin(), v.end());
  const std::size_t idx = static_cast<std::size_t>(frac * static_cast<double>(v.size() - 1) + 0.5);
  return v[idx];
}

}  // namespace

SweepSummary summarize(const std::vector<BoundReport>& reports) {
  SweepSummary s;
  s.rows = static_cast<int>(reports.size());
  std::vector<double> lo, hi;
  for (const BoundReport& r : reports) {
    if (!r.error.empty()) {
      ++s.failures;
      continue;
    }
    if (r.eff_lower) lo.push_back(*r.eff_lower);
    if (r.eff_upper) hi.push_back(*r.eff_upper);
  }
  s.eff_lower_min = percentile(lo, 0.0);
  s.eff_lower_median = percentile(lo, 0.5);
  s.eff_lower_max = percentile(lo, 1.0);
  s.eff_upper_min = percentile(hi, 0.0);
  s.eff_upper_median = percentile(hi, 0.5);
  s.eff_upper_max = percentile(hi, 1.0);
  return s;
}

}  // namespace certify
