#include "certify/spectral.hpp"

#include <cmath>

#include "certify/errors.hpp"
#include "certify/quadrature.hpp"

namespace certify {

namespace {

// Legendre values L_0..L_max at xi.
void legendre_values(int max, double xi, std::span<double> L) {
  L[0] = 1.0;
  if (max >= 1) L[1] = xi;
  for (int k = 1; k < max; ++k)
    L[static_cast<std::size_t>(k + 1)] =
        ((2 * k + 1) * xi * L[static_cast<std::size_t>(k)] - k * L[static_cast<std::size_t>(k - 1)]) / (k + 1);
}

// Reference 1D stiffness and mass of the modal Dirichlet basis by quadrature
// (exact: integrands are polynomials of degree <= 2n+2).
void reference_matrices(int n, Eigen::MatrixXd& K, Eigen::MatrixXd& M) {
  const QuadRule g = gauss_legendre(n + 2);
  K.setZero(n, n);
  M.setZero(n, n);
  std::vector<double> vals(static_cast<std::size_t>(n)), ders(static_cast<std::size_t>(n));
  for (std::size_t q = 0; q < g.points.size(); ++q) {
    SpectralSpace::eval_modes_1d(n, g.points[q], vals, ders);
    const double w = g.weights[q];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        K(i, j) += w * ders[static_cast<std::size_t>(i)] * ders[static_cast<std::size_t>(j)];
        M(i, j) += w * vals[static_cast<std::size_t>(i)] * vals[static_cast<std::size_t>(j)];
      }
  }
  K = K.selfadjointView<Eigen::Lower>();
  M = M.selfadjointView<Eigen::Lower>();
  // the modal choice makes the reference stiffness diagonal; K_kk = 2(2k+1)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && std::abs(K(i, j)) > 1e-10)
        throw NumericalError("reference stiffness lost its diagonal structure");
}

}  // namespace

SpectralSpace::SpectralSpace(const Rect& rect, int order_x, int order_y)
    : rect_(rect), nx_(order_x), ny_(order_y) {
  if (nx_ < 1 || ny_ < 1) throw std::domain_error("spectral orders must be >= 1");
  reference_matrices(nx_, Kx_, Mx_);
  if (ny_ == nx_) {
    Ky_ = Kx_;
    My_ = Mx_;
  } else {
    reference_matrices(ny_, Ky_, My_);
  }
}

void SpectralSpace::eval_modes_1d(int n, double xi, std::span<double> values, std::span<double> derivs) {
  std::vector<double> L(static_cast<std::size_t>(n + 2));
  legendre_values(n + 1, xi, L);
  for (int k = 1; k <= n; ++k) {
    values[static_cast<std::size_t>(k - 1)] =
        L[static_cast<std::size_t>(k + 1)] - L[static_cast<std::size_t>(k - 1)];
    // psi_k' = L'_{k+1} - L'_{k-1} = (2k+1) L_k
    derivs[static_cast<std::size_t>(k - 1)] = (2 * k + 1) * L[static_cast<std::size_t>(k)];
  }
}

bool SpectralSpace::eval_factors(const Vec2& p, Eigen::VectorXd& vx, Eigen::VectorXd& dvx,
                                 Eigen::VectorXd& vy, Eigen::VectorXd& dvy) const {
  constexpr double tol = 1e-14;
  if (!rect_.contains(p, tol)) return false;
  const double jx = 2.0 / rect_.width(), jy = 2.0 / rect_.height();
  const double xi = std::clamp(jx * (p.x() - rect_.x0) - 1.0, -1.0, 1.0);
  const double eta = std::clamp(jy * (p.y() - rect_.y0) - 1.0, -1.0, 1.0);
  vx.resize(nx_);
  dvx.resize(nx_);
  vy.resize(ny_);
  dvy.resize(ny_);
  eval_modes_1d(nx_, xi, {vx.data(), static_cast<std::size_t>(nx_)}, {dvx.data(), static_cast<std::size_t>(nx_)});
  eval_modes_1d(ny_, eta, {vy.data(), static_cast<std::size_t>(ny_)}, {dvy.data(), static_cast<std::size_t>(ny_)});
  dvx *= jx;
  dvy *= jy;
  return true;
}

void SpectralSpace::eval_basis(const Vec2& p, Eigen::VectorXd& values, Eigen::MatrixX2d& gradients) const {
  values.setZero(dim());
  gradients.setZero(dim(), 2);
  Eigen::VectorXd vx, dvx, vy, dvy;
  if (!eval_factors(p, vx, dvx, vy, dvy)) return;
  for (int i = 0; i < nx_; ++i)
    for (int j = 0; j < ny_; ++j) {
      const int m = mode_index(i, j);
      values(m) = vx(i) * vy(j);
      gradients(m, 0) = dvx(i) * vy(j);
      gradients(m, 1) = vx(i) * dvy(j);
    }
}

GramSystem::GramSystem(const SpectralSpace& space) : space_(space) {
  const int nx = space.order_x(), ny = space.order_y();
  const double hx = space.rect().width(), hy = space.rect().height();
  const double ax = (2.0 / hx) * (hy / 2.0);  // d/dx part
  const double ay = (hx / 2.0) * (2.0 / hy);  // d/dy part
  G_.setZero(nx * ny, nx * ny);
  for (int i = 0; i < nx; ++i)
    for (int k = 0; k < nx; ++k)
      for (int j = 0; j < ny; ++j)
        for (int l = 0; l < ny; ++l)
          G_(space.mode_index(i, j), space.mode_index(k, l)) =
              ax * space.stiffness_x()(i, k) * space.mass_y()(j, l) +
              ay * space.mass_x()(i, k) * space.stiffness_y()(j, l);
  llt_.compute(G_);
  if (llt_.info() != Eigen::Success) {
    const double min_diag = G_.diagonal().minCoeff();
    throw NumericalError("Gram factorization failed (smallest diagonal entry " + std::to_string(min_diag) + ")");
  }
}

std::pair<double, Eigen::VectorXd> GramSystem::dual_norm(const Eigen::VectorXd& F) const {
  if (F.size() != G_.rows()) throw std::invalid_argument("functional length does not match space dimension");
  Eigen::VectorXd g = llt_.solve(F);
  const double sq = F.dot(g);
  return {std::sqrt(std::max(0.0, sq)), std::move(g)};
}

}  // namespace certify
