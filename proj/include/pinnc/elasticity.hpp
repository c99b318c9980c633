#pragma once

#include <Eigen/Dense>

#include <stdexcept>

namespace pinnc {

/// Isotropic plane-strain material. Stress components are ordered
/// (sigma_xx, sigma_yy, sigma_xy) throughout.
struct MaterialParams {
  double youngs = 1.0;
  double poisson = 0.0;
  double lambda = 0.0;
  double mu = 0.5;

  static MaterialParams from_engineering(double youngs, double poisson);
};

/// (lambda, mu) from (E, nu); rejects the incompressible limit nu = 0.5.
std::pair<double, double> lame_from_engineering(double youngs, double poisson);

/// Symmetric strain (eps_xx, eps_yy, eps_xy) from a displacement gradient.
Eigen::Vector3d strain_from_grad(const Eigen::Matrix2d& grad_u);

/// Stress-to-stress coupling residual sigma - C : eps under plane strain.
Eigen::Vector3d constitutive_residual(const Eigen::Vector3d& sigma,
                                      const Eigen::Vector3d& strain,
                                      const MaterialParams& mat);

/// Momentum balance residual (div sigma + b). Body force defaults to zero;
/// the argument is kept for future use.
Eigen::Vector2d balance_residual(double dsxx_dx, double dsxy_dy, double dsxy_dx,
                                 double dsyy_dy,
                                 const Eigen::Vector2d& body_force = {0.0, 0.0});

/// Post-processing only: out-of-plane stress under plane strain.
double sigma_zz_plane_strain(double poisson, double sxx, double syy);

/// Weights of the composite loss. Every term is a weighted mean squared
/// error; defaults are all one. `kkt` multiplies the whole KKT loss on top
/// of the per-condition weights carried by the KKT method itself.
struct LossWeights {
  Eigen::Matrix<double, 5, 1> pde = Eigen::Matrix<double, 5, 1>::Ones();  // BE_x, BE_y, SS_xx, SS_yy, SS_xy
  Eigen::Vector2d dbc = Eigen::Vector2d::Ones();
  Eigen::Vector2d nbc = Eigen::Vector2d::Ones();
  Eigen::Matrix<double, 5, 1> exp = Eigen::Matrix<double, 5, 1>::Ones();  // u_x, u_y, s_xx, s_yy, s_xy
  double fs = 1.0;
  double kkt = 1.0;

  void validate() const;
};

/// Per-term weighted MSE values and their sum.
struct LossBreakdown {
  double pde = 0.0;
  double dbc = 0.0;
  double nbc = 0.0;
  double exp = 0.0;
  double fs = 0.0;
  double kkt = 0.0;
  double total = 0.0;
  Eigen::Matrix<double, 5, 1> pde_parts = Eigen::Matrix<double, 5, 1>::Zero();

  void finish() { total = pde + dbc + nbc + exp + fs + kkt; }
};

}  // namespace pinnc
