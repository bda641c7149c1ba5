#include "certify/oracle.hpp"

#include <Eigen/Sparse>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "certify/errors.hpp"
#include "certify/quadrature.hpp"

namespace certify {

namespace {

constexpr double kDedupTol = 1e-12;
constexpr double kBoundaryTol = 1e-10;

struct VertexKey {
  std::int64_t x, y;
  bool operator==(const VertexKey&) const = default;
};

struct VertexKeyHash {
  std::size_t operator()(const VertexKey& k) const {
    return std::hash<std::int64_t>{}(k.x * 1000003 + k.y);
  }
};

VertexKey quantize(const Vec2& p) {
  return {static_cast<std::int64_t>(std::llround(p.x() / kDedupTol)),
          static_cast<std::int64_t>(std::llround(p.y() / kDedupTol))};
}

double segment_distance(const Vec2& a, const Vec2& b, const Vec2& p) {
  const Vec2 d = b - a;
  const double len2 = d.squaredNorm();
  const double t = len2 > 0.0 ? std::clamp((p - a).dot(d) / len2, 0.0, 1.0) : 0.0;
  return (p - (a + t * d)).norm();
}

// Gradients of the three barycentric hat functions; constant per triangle.
std::array<Vec2, 3> hat_gradients(const Triangle& t) {
  const double inv2A = 1.0 / (2.0 * t.area());
  return {Vec2{(t.b.y() - t.c.y()) * inv2A, (t.c.x() - t.b.x()) * inv2A},
          Vec2{(t.c.y() - t.a.y()) * inv2A, (t.a.x() - t.c.x()) * inv2A},
          Vec2{(t.a.y() - t.b.y()) * inv2A, (t.b.x() - t.a.x()) * inv2A}};
}

std::array<double, 3> hat_values(const Triangle& t, const Vec2& p) {
  const double A = t.area();
  const double la = Triangle{p, t.b, t.c}.area() / A;
  const double lb = Triangle{t.a, p, t.c}.area() / A;
  return {la, lb, 1.0 - la - lb};
}

Triangle mesh_triangle(const Mesh& m, int k) {
  const auto& tri = m.triangles[static_cast<std::size_t>(k)];
  return {m.vertices[static_cast<std::size_t>(tri[0])], m.vertices[static_cast<std::size_t>(tri[1])],
          m.vertices[static_cast<std::size_t>(tri[2])]};
}

using SpMat = Eigen::SparseMatrix<double>;

}  // namespace

Mesh mesh_polygon(const Polygon& poly, int refine_levels) {
  const Triangulation tris = refine(triangulate(poly), refine_levels);

  Mesh mesh;
  mesh.tag_names = tris.tag_names;
  mesh.tri_tags = tris.tags;
  std::unordered_map<VertexKey, int, VertexKeyHash> index;

  auto vertex_id = [&](const Vec2& p) {
    const auto [it, fresh] = index.try_emplace(quantize(p), mesh.n_vertices());
    if (fresh) mesh.vertices.push_back(p);
    return it->second;
  };

  for (const Triangle& t : tris.triangles) {
    if (t.area() <= 0.0) throw InvalidGeometryError("mesh_polygon: zero-area triangle");
    mesh.triangles.push_back({vertex_id(t.a), vertex_id(t.b), vertex_id(t.c)});
  }

  mesh.on_boundary.assign(mesh.vertices.size(), 0);
  const Ring& ring = poly.outer;
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    for (std::size_t e = 0; e < ring.size(); ++e) {
      if (segment_distance(ring[e], ring[(e + 1) % ring.size()], mesh.vertices[v]) < kBoundaryTol) {
        mesh.on_boundary[v] = 1;
        break;
      }
    }
  }

  mesh.interior_index.assign(mesh.vertices.size(), -1);
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    if (!mesh.on_boundary[v]) mesh.interior_index[v] = mesh.n_interior++;
  }
  return mesh;
}

Eigen::VectorXd p1_solve(const EllipticProblem& problem, Params mu, const Mesh& mesh) {
  problem.check_params(mu);
  const int n = mesh.n_interior;
  std::vector<Eigen::Triplet<double>> trips;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);

  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const Triangle t = mesh_triangle(mesh, k);
    const auto grads = hat_gradients(t);
    const auto& ids = mesh.triangles[static_cast<std::size_t>(k)];
    const std::string_view tag = mesh.tag_names[static_cast<std::size_t>(mesh.tri_tags[static_cast<std::size_t>(k)])];
    const QuadRule2D rule = triangle_rule(4, t);

    Eigen::Matrix3d Kloc = Eigen::Matrix3d::Zero();
    Eigen::Vector3d Floc = Eigen::Vector3d::Zero();
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const Vec2& p = rule.points[q];
      const double w = rule.weights[q];
      const Eigen::Matrix2d A = problem.A(p, tag, mu);
      const Vec2 b = problem.b(p, tag, mu);
      const double c = problem.c(p, tag, mu);
      const double f = problem.f(p, tag, mu);
      const auto vals = hat_values(t, p);
      for (int i = 0; i < 3; ++i) {
        Floc(i) += w * f * vals[static_cast<std::size_t>(i)];
        for (int j = 0; j < 3; ++j) {
          Kloc(i, j) += w * (grads[static_cast<std::size_t>(j)].dot(A * grads[static_cast<std::size_t>(i)]) +
                             b.dot(grads[static_cast<std::size_t>(j)]) * vals[static_cast<std::size_t>(i)] +
                             c * vals[static_cast<std::size_t>(j)] * vals[static_cast<std::size_t>(i)]);
        }
      }
    }

    for (int i = 0; i < 3; ++i) {
      const int gi = mesh.interior_index[static_cast<std::size_t>(ids[static_cast<std::size_t>(i)])];
      if (gi < 0) continue;
      rhs(gi) += Floc(i);
      for (int j = 0; j < 3; ++j) {
        const int gj = mesh.interior_index[static_cast<std::size_t>(ids[static_cast<std::size_t>(j)])];
        if (gj >= 0) trips.emplace_back(gi, gj, Kloc(i, j));
      }
    }
  }

  SpMat K(n, n);
  K.setFromTriplets(trips.begin(), trips.end());
  Eigen::SparseLU<SpMat> solver(K);
  if (solver.info() != Eigen::Success) throw NumericalError("p1_solve: factorization failed");
  const Eigen::VectorXd u_int = solver.solve(rhs);
  if (solver.info() != Eigen::Success) throw NumericalError("p1_solve: solve failed");

  Eigen::VectorXd u = Eigen::VectorXd::Zero(mesh.n_vertices());
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    const int gi = mesh.interior_index[static_cast<std::size_t>(v)];
    if (gi >= 0) u(v) = u_int(gi);
  }
  return u;
}

double p1_dual_norm(const Mesh& mesh, const Eigen::VectorXd& F_interior) {
  const int n = mesh.n_interior;
  if (F_interior.size() != n) throw ConfigError("p1_dual_norm: functional size mismatch");
  std::vector<Eigen::Triplet<double>> trips;

  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const Triangle t = mesh_triangle(mesh, k);
    const auto grads = hat_gradients(t);
    const auto& ids = mesh.triangles[static_cast<std::size_t>(k)];
    const double area = t.area();
    for (int i = 0; i < 3; ++i) {
      const int gi = mesh.interior_index[static_cast<std::size_t>(ids[static_cast<std::size_t>(i)])];
      if (gi < 0) continue;
      for (int j = 0; j < 3; ++j) {
        const int gj = mesh.interior_index[static_cast<std::size_t>(ids[static_cast<std::size_t>(j)])];
        if (gj >= 0)
          trips.emplace_back(gi, gj, area * grads[static_cast<std::size_t>(i)].dot(grads[static_cast<std::size_t>(j)]));
      }
    }
  }

  SpMat K(n, n);
  K.setFromTriplets(trips.begin(), trips.end());
  Eigen::SimplicialLLT<SpMat> solver(K);
  if (solver.info() != Eigen::Success) throw NumericalError("p1_dual_norm: stiffness not SPD");
  const Eigen::VectorXd g = solver.solve(F_interior);
  return std::sqrt(std::max(0.0, F_interior.dot(g)));
}

Eigen::VectorXd p1_load(const Mesh& mesh, const std::function<double(const Vec2&)>& density,
                        int quad_order) {
  Eigen::VectorXd F = Eigen::VectorXd::Zero(mesh.n_interior);
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const Triangle t = mesh_triangle(mesh, k);
    const auto& ids = mesh.triangles[static_cast<std::size_t>(k)];
    const QuadRule2D rule = triangle_rule(quad_order, t);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const double wd = rule.weights[q] * density(rule.points[q]);
      const auto vals = hat_values(t, rule.points[q]);
      for (int i = 0; i < 3; ++i) {
        const int gi = mesh.interior_index[static_cast<std::size_t>(ids[static_cast<std::size_t>(i)])];
        if (gi >= 0) F(gi) += wd * vals[static_cast<std::size_t>(i)];
      }
    }
  }
  return F;
}

double h1_error(const Field& field, const Eigen::VectorXd& u_ref, const Mesh& mesh, Params mu,
                int quad_order) {
  if (u_ref.size() != mesh.n_vertices()) throw ConfigError("h1_error: coefficient size mismatch");
  double acc = 0.0;
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const Triangle t = mesh_triangle(mesh, k);
    const auto grads = hat_gradients(t);
    const auto& ids = mesh.triangles[static_cast<std::size_t>(k)];
    Vec2 grad_ref = Vec2::Zero();
    for (int i = 0; i < 3; ++i)
      grad_ref += u_ref(ids[static_cast<std::size_t>(i)]) * grads[static_cast<std::size_t>(i)];
    const QuadRule2D rule = triangle_rule(quad_order, t);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      acc += rule.weights[q] * (field.gradient(rule.points[q], mu) - grad_ref).squaredNorm();
    }
  }
  return std::sqrt(acc);
}

}  // namespace certify
