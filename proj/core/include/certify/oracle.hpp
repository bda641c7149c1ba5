#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <vector>

#include "certify/field.hpp"
#include "certify/problem.hpp"

namespace certify {

/// Conforming P1 triangle mesh of a polygon, for reference solves and an
/// independent Riesz dual-norm computation.
struct Mesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<char> on_boundary;       // per-vertex
  std::vector<int> tri_tags;           // subregion per triangle
  std::vector<std::string> tag_names;  // index 0 reserved for ""
  std::vector<int> interior_index;     // per-vertex, -1 on the boundary
  int n_interior = 0;

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_triangles() const { return static_cast<int>(triangles.size()); }
};

/// Ear-clipping triangulation uniformly refined; shared-edge midpoints are
/// de-duplicated so the mesh is conforming.
Mesh mesh_polygon(const Polygon& poly, int refine_levels);

/// Galerkin P1 solution with homogeneous Dirichlet values; returns one
/// coefficient per vertex (zero on the boundary).
Eigen::VectorXd p1_solve(const EllipticProblem& problem, Params mu, const Mesh& mesh);

/// Discrete dual norm in the gradient inner product: solve K g = F on the
/// interior vertices, return sqrt(F^T g).
double p1_dual_norm(const Mesh& mesh, const Eigen::VectorXd& F_interior);

/// F_i = integral of density * hat_i over the mesh, indexed by interior
/// vertices (the load vector of an L2 functional).
Eigen::VectorXd p1_load(const Mesh& mesh, const std::function<double(const Vec2&)>& density,
                        int quad_order = 4);

/// |field - u_ref|_{H1} by per-triangle quadrature; grad u_ref is constant on
/// each triangle.
double h1_error(const Field& field, const Eigen::VectorXd& u_ref, const Mesh& mesh, Params mu,
                int quad_order = 6);

}  // namespace certify
