#include "certify/runner.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "certify/errors.hpp"
#include "certify/oracle.hpp"

namespace certify {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in, nullptr, /*allow_exceptions=*/true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

Ring parse_ring(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() < 3) throw ConfigError(what + ": need an array of at least 3 [x,y] pairs");
  Ring ring;
  for (const json& v : j) {
    if (!v.is_array() || v.size() != 2) throw ConfigError(what + ": vertices must be [x,y] pairs");
    ring.emplace_back(v[0].get<double>(), v[1].get<double>());
  }
  return ring;
}

Rect parse_rect(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 4) throw ConfigError(what + ": expected [x0, x1, y0, y1]");
  return Rect(j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>());
}

CatalogEntry parse_custom(const json& j) {
  CatalogEntry e;
  e.id = "custom";
  e.summary = "user-supplied polygon with constant coefficients";
  for (const char* key : {"polygon", "inner", "outer", "bounds"}) {
    if (!j.contains(key)) throw ConfigError(std::string("custom problem: missing '") + key + "'");
  }

  const Polygon domain = load_polygon(j.at("polygon").get<std::string>());
  const Rect inner = parse_rect(j.at("inner"), "custom.inner");
  const Rect outer = parse_rect(j.at("outer"), "custom.outer");
  e.embedding = [inner, domain, outer](Params) { return Embedding(inner, domain, outer); };

  Eigen::Matrix2d A = Eigen::Matrix2d::Identity();
  if (j.contains("A")) {
    const json& ja = j.at("A");
    if (!ja.is_array() || ja.size() != 2) throw ConfigError("custom.A: expected a 2x2 array");
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) A(r, c) = ja[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].get<double>();
  }
  Vec2 b(0.0, 0.0);
  if (j.contains("b")) b = Vec2(j.at("b")[0].get<double>(), j.at("b")[1].get<double>());
  const double c = j.value("c", 0.0);
  const double f = j.value("f", 0.0);

  e.problem.A = [A](const Vec2&, std::string_view, Params) { return A; };
  e.problem.b = [b](const Vec2&, std::string_view, Params) { return b; };
  e.problem.c = [c](const Vec2&, std::string_view, Params) { return c; };
  e.problem.f = [f](const Vec2&, std::string_view, Params) { return f; };

  const json& jb = j.at("bounds");
  CoefficientBounds cb;
  cb.a0 = jb.value("a0", 1.0);
  cb.normA = jb.value("normA", 1.0);
  cb.normB = jb.value("normB", 0.0);
  cb.normC = jb.value("normC", 0.0);
  e.problem.bounds = [cb](Params) { return cb; };
  e.problem.param_dim = 0;
  e.default_params.push_back({});
  return e;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string csv_cell(const std::optional<double>& v) { return v ? fmt(*v) : ""; }

}  // namespace

Polygon load_polygon(const std::string& path) {
  const json j = parse_file(path);
  if (!j.contains("vertices")) throw ConfigError(path + ": missing 'vertices'");
  Ring outer = parse_ring(j.at("vertices"), path + ".vertices");

  std::vector<Polygon::Subregion> subs;
  if (j.contains("subregions")) {
    for (const auto& [name, pieces] : j.at("subregions").items()) {
      Polygon::Subregion sub;
      sub.name = name;
      for (const json& piece : pieces) sub.pieces.push_back(parse_ring(piece, path + ".subregions." + name));
      subs.push_back(std::move(sub));
    }
  }
  return Polygon(std::move(outer), std::move(subs));
}

RunConfig load_config(const std::string& path) {
  const json j = parse_file(path);
  if (!j.is_object()) throw ConfigError(path + ": top level must be an object");
  const int version = j.value("schema_version", 0);
  if (version != 1) {
    throw ConfigError(path + ": schema_version must be 1 (got " + std::to_string(version) + ")");
  }
  if (!j.contains("problem")) throw ConfigError(path + ": missing 'problem'");

  RunConfig cfg;
  const json& jp = j.at("problem");
  if (jp.is_string()) {
    cfg.problem_id = jp.get<std::string>();
    catalog_lookup(cfg.problem_id);  // fail early with the catalog listing
  } else if (jp.is_object()) {
    cfg.problem_id = "custom";
    cfg.custom = parse_custom(jp);
  } else {
    throw ConfigError(path + ": 'problem' must be a catalog id or a custom-problem object");
  }

  cfg.field_id = j.value("field", cfg.field_id);
  if (j.contains("params")) {
    for (const json& row : j.at("params")) {
      cfg.params.push_back(row.get<std::vector<double>>());
    }
  }

  cfg.res.order = j.value("order", cfg.res.order);
  cfg.res.inner_quad = j.value("inner_quad", cfg.res.inner_quad);
  cfg.res.triangle_order = j.value("triangle_order", cfg.res.triangle_order);
  cfg.res.refine_levels = j.value("refine_levels", cfg.res.refine_levels);
  cfg.res.time_points = j.value("time_points", cfg.res.time_points);
  if (cfg.res.order < 1 || cfg.res.inner_quad < 1 || cfg.res.triangle_order < 1 ||
      cfg.res.refine_levels < 0 || cfg.res.time_points < 1) {
    throw ConfigError(path + ": resolution fields must be positive (refine_levels >= 0)");
  }

  if (j.contains("parabolic_constants")) {
    const json& pc = j.at("parabolic_constants");
    if (!pc.contains("c_B") || !pc.contains("C_B")) {
      throw ConfigError(path + ": parabolic_constants needs both 'c_B' and 'C_B'");
    }
    StabilityConstants sc;
    sc.c_B = pc.at("c_B").get<double>();
    sc.C_B = pc.at("C_B").get<double>();
    sc.provenance = "user-config";
    cfg.parabolic_constants = sc;
  }

  if (j.contains("oracle")) {
    const json& jo = j.at("oracle");
    cfg.oracle_enabled = jo.value("enabled", true);
    cfg.oracle_refine = jo.value("refine_levels", cfg.oracle_refine);
  }

  cfg.out_path = j.value("out", cfg.out_path);
  cfg.workers = j.value("workers", 0);
  cfg.seed = j.value("seed", 0u);
  return cfg;
}

void write_csv(const std::vector<BoundReport>& reports, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  const std::size_t n_mu = reports.empty() ? 0 : reports.front().mu.size();
  out << "param_index";
  for (std::size_t k = 0; k < n_mu; ++k) out << ",mu" << k;
  out << ",dual_inner,dual_outer,lower_bound,upper_bound,ref_error,eff_lower,eff_upper,"
         "t_inner_s,t_outer_s,t_oracle_s,error\n";
  for (const BoundReport& r : reports) {
    out << r.param_index;
    for (std::size_t k = 0; k < n_mu; ++k) out << "," << (k < r.mu.size() ? fmt(r.mu[k]) : "");
    out << "," << fmt(r.dual_inner) << "," << fmt(r.dual_outer) << "," << fmt(r.lower_bound) << ","
        << fmt(r.upper_bound) << "," << csv_cell(r.ref_error) << "," << csv_cell(r.eff_lower) << ","
        << csv_cell(r.eff_upper) << "," << fmt(r.t_inner_s) << "," << fmt(r.t_outer_s) << ","
        << fmt(r.t_oracle_s) << ",";
    std::string msg = r.error;
    for (char& ch : msg) {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    out << msg << "\n";
  }
}

RunResult run(const RunConfig& config) {
  const CatalogEntry& entry = config.custom ? *config.custom : catalog_lookup(config.problem_id);
  const std::vector<std::vector<double>>& params =
      config.params.empty() ? entry.default_params : config.params;
  const int workers = config.workers > 0
                          ? config.workers
                          : std::max(1u, std::thread::hardware_concurrency());

  RunResult result;
  if (entry.parabolic) {
    if (!config.parabolic_constants) {
      throw ConfigError("problem '" + entry.id +
                        "' is parabolic: supply parabolic_constants {c_B, C_B} in the config");
    }
    const auto field = catalog_spacetime_field(entry, config.field_id);
    int index = 0;
    for (const std::vector<double>& mu_vec : params) {
      BoundReport r;
      r.param_index = index;
      r.mu = mu_vec;
      try {
        const Params mu(mu_vec);
        r = certify_parabolic(*entry.spacetime, *field, mu, entry.embedding(mu), config.res,
                              *config.parabolic_constants);
        r.param_index = index;
      } catch (const std::exception& e) {
        r.error = e.what();
      }
      result.reports.push_back(std::move(r));
      ++index;
    }
  } else {
    FieldChoice choice = catalog_field(entry, config.field_id);
    EllipticProblem problem = entry.problem;
    if (choice.zero_source) {
      problem.f = [](const Vec2&, std::string_view, Params) { return 0.0; };
    }

    ReferenceOracle oracle;
    if (config.oracle_enabled) {
      oracle = [&entry, &problem, field = choice.field, levels = config.oracle_refine](
                   Params mu, double& t_s) {
        const auto t0 = std::chrono::steady_clock::now();
        const Mesh mesh = mesh_polygon(entry.embedding(mu).domain, levels);
        const Eigen::VectorXd u_ref = p1_solve(problem, mu, mesh);
        const double err = h1_error(*field, u_ref, mesh, mu);
        t_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return err;
      };
    }

    result.reports =
        sweep(problem, *choice.field, params, entry.embedding, config.res, oracle, workers);
  }

  result.summary = summarize(result.reports);
  result.csv_path = config.out_path;
  write_csv(result.reports, result.csv_path);
  return result;
}

std::string describe(const std::string& problem_id) {
  const CatalogEntry& entry = catalog_lookup(problem_id);
  std::ostringstream os;
  os << "problem: " << entry.id << "\n  " << entry.summary << "\n";
  os << "  parameter dimension: " << entry.param_dim << ", default grid: "
     << entry.default_params.size() << " value(s)\n";

  const std::vector<double>& mu0 = entry.default_params.front();
  const Embedding emb = entry.embedding(Params(mu0));
  os << "  inner rectangle: (" << emb.inner.x0 << "," << emb.inner.x1 << ") x (" << emb.inner.y0
     << "," << emb.inner.y1 << ")\n";
  os << "  outer rectangle: (" << emb.outer.x0 << "," << emb.outer.x1 << ") x (" << emb.outer.y0
     << "," << emb.outer.y1 << ")\n";
  os << "  domain area: " << emb.domain.area() << "\n";

  if (entry.parabolic) {
    os << "  time horizon T = " << entry.spacetime->T << "\n";
    os << "  stability constants: user-supplied (config key parabolic_constants)\n";
    return os.str();
  }

  auto show_constants = [&](Params mu) {
    const CoefficientBounds cb = entry.problem.bounds(mu);
    const StabilityConstants sc =
        elliptic_constants(cb.a0, cb.normA, cb.normB, cb.normC, poincare_bound(emb.outer));
    os << "    a0 = " << cb.a0 << ", |A| = " << cb.normA << ", |b| = " << cb.normB
       << ", |c| = " << cb.normC << ", s_PF = " << sc.s_PF << "\n";
    os << "    c_B = 1/(|A| + s_PF |b| + s_PF^2 |c|) = " << sc.c_B << "\n";
    os << "    C_B = 1/a0 = " << sc.C_B << "\n";
  };

  if (entry.id == "sawblade") {
    os << "  constants: c_B = 1/(2 max{mu1, mu2}), C_B = 1/min{mu1, mu2}\n";
    os << "  at mu = (1, 0.1):\n";
    const std::vector<double> sample = {1.0, 0.1};
    show_constants(Params(sample));
  } else if (entry.id == "notch") {
    os << "  constants: C_B = 1/lambda_min(A) = 4\n";
    os << "  at mu = pi/4:\n";
    const std::vector<double> sample = {0.25 * M_PI};
    show_constants(Params(sample));
  } else {
    os << "  constants at the first default parameter:\n";
    show_constants(Params(mu0));
  }
  return os.str();
}

}  // namespace certify
