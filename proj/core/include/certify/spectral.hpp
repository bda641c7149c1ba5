#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <span>

#include "certify/geometry.hpp"

namespace certify {

/// Tensor-product polynomial test space on a rectangle with homogeneous
/// Dirichlet boundary values. 1D basis in reference coordinates:
/// psi_k(xi) = L_{k+1}(xi) - L_{k-1}(xi), k = 1..n, so psi_k(+-1) = 0 and the
/// reference 1D stiffness is diagonal.
class SpectralSpace {
 public:
  SpectralSpace(const Rect& rect, int order_x, int order_y);

  const Rect& rect() const { return rect_; }
  int order_x() const { return nx_; }
  int order_y() const { return ny_; }
  int dim() const { return nx_ * ny_; }
  /// Mode (i, j) maps to flat index i * order_y + j.
  int mode_index(int i, int j) const { return i * ny_ + j; }

  /// 1D reference-basis values and derivatives at reference coordinate xi.
  static void eval_modes_1d(int n, double xi, std::span<double> values, std::span<double> derivs);

  /// Values and gradients of every mode at a physical point. Points outside
  /// the rectangle evaluate to zero (zero extension).
  void eval_basis(const Vec2& p, Eigen::VectorXd& values, Eigen::MatrixX2d& gradients) const;

  /// Separable evaluation: 1D factors per direction at a physical point,
  /// mapped derivatives included. False if p is outside the rectangle.
  bool eval_factors(const Vec2& p, Eigen::VectorXd& vx, Eigen::VectorXd& dvx, Eigen::VectorXd& vy,
                    Eigen::VectorXd& dvy) const;

  /// Reference 1D stiffness/mass per direction (computed by exact quadrature).
  const Eigen::MatrixXd& stiffness_x() const { return Kx_; }
  const Eigen::MatrixXd& stiffness_y() const { return Ky_; }
  const Eigen::MatrixXd& mass_x() const { return Mx_; }
  const Eigen::MatrixXd& mass_y() const { return My_; }

 private:
  Rect rect_;
  int nx_, ny_;
  Eigen::MatrixXd Kx_, Ky_, Mx_, My_;
};

/// H^1_0 Gram matrix (gradient inner product) of a SpectralSpace as a mapped
/// Kronecker sum, with a dense SPD factorization.
class GramSystem {
 public:
  explicit GramSystem(const SpectralSpace& space);

  const Eigen::MatrixXd& matrix() const { return G_; }
  const SpectralSpace& space() const { return space_; }

  /// Discrete dual norm of the functional vector F (F_i = r(phi_i)):
  /// solves G g = F, returns sqrt(F^T g) and the Riesz coefficients g.
  std::pair<double, Eigen::VectorXd> dual_norm(const Eigen::VectorXd& F) const;

 private:
  SpectralSpace space_;
  Eigen::MatrixXd G_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

}  // namespace certify
