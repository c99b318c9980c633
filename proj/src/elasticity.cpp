#include "pinnc/elasticity.hpp"

#include <cmath>

namespace pinnc {

std::pair<double, double> lame_from_engineering(double youngs, double poisson) {
  if (!(youngs > 0.0)) throw std::invalid_argument("Young's modulus must be positive");
  if (!(poisson >= 0.0) || poisson >= 0.5) {
    throw std::invalid_argument("Poisson's ratio must lie in [0, 0.5)");
  }
  const double lambda = youngs * poisson / ((1.0 + poisson) * (1.0 - 2.0 * poisson));
  const double mu = youngs / (2.0 * (1.0 + poisson));
  return {lambda, mu};
}

MaterialParams MaterialParams::from_engineering(double youngs, double poisson) {
  const auto [lambda, mu] = lame_from_engineering(youngs, poisson);
  return {youngs, poisson, lambda, mu};
}

Eigen::Vector3d strain_from_grad(const Eigen::Matrix2d& grad_u) {
  return {grad_u(0, 0), grad_u(1, 1), 0.5 * (grad_u(0, 1) + grad_u(1, 0))};
}

Eigen::Vector3d constitutive_residual(const Eigen::Vector3d& sigma,
                                      const Eigen::Vector3d& strain,
                                      const MaterialParams& mat) {
  const double lp2m = mat.lambda + 2.0 * mat.mu;
  return {sigma[0] - lp2m * strain[0] - mat.lambda * strain[1],
          sigma[1] - mat.lambda * strain[0] - lp2m * strain[1],
          sigma[2] - 2.0 * mat.mu * strain[2]};
}

Eigen::Vector2d balance_residual(double dsxx_dx, double dsxy_dy, double dsxy_dx,
                                 double dsyy_dy, const Eigen::Vector2d& body_force) {
  return {dsxx_dx + dsxy_dy + body_force[0], dsxy_dx + dsyy_dy + body_force[1]};
}

double sigma_zz_plane_strain(double poisson, double sxx, double syy) {
  return poisson * (sxx + syy);
}

void LossWeights::validate() const {
  const auto check = [](double w) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("loss weights must be finite and non-negative");
    }
  };
  for (int i = 0; i < 5; ++i) check(pde[i]);
  for (int i = 0; i < 2; ++i) check(dbc[i]);
  for (int i = 0; i < 2; ++i) check(nbc[i]);
  for (int i = 0; i < 5; ++i) check(exp[i]);
  check(fs);
  check(kkt);
}

}  // namespace pinnc
