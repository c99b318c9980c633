#include "pinnc/contact.hpp"

#include <cmath>

namespace pinnc {

double gap(double yref, double u_y, double n_y) {
  const double abs_ny = std::abs(n_y);
  if (abs_ny <= 1e-12) {
    throw std::domain_error("gap undefined at sharp edge: |n_y| <= 1e-12");
  }
  return (yref + u_y) / abs_ny;
}

std::pair<double, double> traction_decompose(const Eigen::Vector3d& sigma,
                                             const Eigen::Vector2d& n,
                                             const Eigen::Vector2d& tau) {
  const Eigen::Vector2d t{sigma[0] * n[0] + sigma[2] * n[1],
                          sigma[2] * n[0] + sigma[1] * n[1]};
  return {t.dot(n), t.dot(tau)};
}

double fischer_burmeister(double a, double b) {
  return a + b - std::sqrt(a * a + b * b);
}

void KktMethod::validate() const {
  if (kind == Kind::SigmoidBased && (!(delta_g > 0.0) || !(delta_p > 0.0))) {
    throw std::invalid_argument("Sigmoid steepness parameters must be positive");
  }
  if (!(w1 >= 0.0) || !(w2 >= 0.0) || !(w3 >= 0.0)) {
    throw std::invalid_argument("KKT weights must be non-negative");
  }
}

KktMethod KktMethod::sign_based(double w1, double w2, double w3) {
  KktMethod m;
  m.kind = Kind::SignBased;
  m.w1 = w1;
  m.w2 = w2;
  m.w3 = w3;
  return m;
}

KktMethod KktMethod::sigmoid_based(double delta_g, double delta_p, double w1,
                                   double w2, double w3) {
  KktMethod m;
  m.kind = Kind::SigmoidBased;
  m.delta_g = delta_g;
  m.delta_p = delta_p;
  m.w1 = w1;
  m.w2 = w2;
  m.w3 = w3;
  return m;
}

KktMethod KktMethod::fischer_burmeister_based(double w) {
  KktMethod m;
  m.kind = Kind::FischerBurmeister;
  m.w1 = w;
  return m;
}

namespace {

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// Numerically stable logistic 1 / (1 + e^{-z}).
double logistic(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

double sign_gate_gap(double g) { return 0.5 * (1.0 - sgn(g)); }
double sign_gate_pressure(double p) { return 0.5 * (1.0 + sgn(p)); }
double sigmoid_gate_gap(double g, double delta) { return logistic(-delta * g); }
double sigmoid_gate_pressure(double p, double delta) { return logistic(delta * p); }

double kkt_point_value(const KktMethod& method, double g, double p) {
  switch (method.kind) {
    case KktMethod::Kind::SignBased: {
      const double a = sign_gate_gap(g) * g;
      const double b = sign_gate_pressure(p) * p;
      const double c = p * g;
      return method.w1 * a * a + method.w2 * b * b + method.w3 * c * c;
    }
    case KktMethod::Kind::SigmoidBased: {
      const double a = sigmoid_gate_gap(g, method.delta_g) * g;
      const double b = sigmoid_gate_pressure(p, method.delta_p) * p;
      const double c = p * g;
      return method.w1 * a * a + method.w2 * b * b + method.w3 * c * c;
    }
    case KktMethod::Kind::FischerBurmeister: {
      const double phi = fischer_burmeister(g, -p);
      return method.w1 * phi * phi;
    }
  }
  throw std::logic_error("unreachable KKT kind");
}

void kkt_point_derivative(const KktMethod& method, double g, double p,
                          double& dg, double& dp) {
  dg = 0.0;
  dp = 0.0;
  switch (method.kind) {
    case KktMethod::Kind::SignBased: {
      // Gates are piecewise constant; differentiate through them as such.
      const double gg = sign_gate_gap(g);
      const double gp = sign_gate_pressure(p);
      dg += method.w1 * 2.0 * (gg * g) * gg;
      dp += method.w2 * 2.0 * (gp * p) * gp;
      dg += method.w3 * 2.0 * (p * g) * p;
      dp += method.w3 * 2.0 * (p * g) * g;
      return;
    }
    case KktMethod::Kind::SigmoidBased: {
      const double sg = sigmoid_gate_gap(g, method.delta_g);
      const double sp = sigmoid_gate_pressure(p, method.delta_p);
      const double a = sg * g;
      const double b = sp * p;
      // d(sg)/dg = -delta sg (1 - sg); d(sp)/dp = +delta sp (1 - sp).
      const double da = sg - method.delta_g * g * sg * (1.0 - sg);
      const double db = sp + method.delta_p * p * sp * (1.0 - sp);
      dg += method.w1 * 2.0 * a * da;
      dp += method.w2 * 2.0 * b * db;
      dg += method.w3 * 2.0 * (p * g) * p;
      dp += method.w3 * 2.0 * (p * g) * g;
      return;
    }
    case KktMethod::Kind::FischerBurmeister: {
      const double r = std::hypot(g, p);
      const double phi = g - p - r;
      if (r > 1e-300) {
        dg += method.w1 * 2.0 * phi * (1.0 - g / r);
        dp += method.w1 * 2.0 * phi * (-1.0 - p / r);
      }
      // phi^2 is differentiable at the origin with zero gradient.
      return;
    }
  }
  throw std::logic_error("unreachable KKT kind");
}

double kkt_loss(const KktMethod& method,
                const Eigen::Ref<const Eigen::VectorXd>& gaps,
                const Eigen::Ref<const Eigen::VectorXd>& pressures) {
  if (gaps.size() != pressures.size()) {
    throw std::invalid_argument("gap/pressure sample count mismatch");
  }
  if (gaps.size() == 0) return 0.0;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < gaps.size(); ++i) {
    sum += kkt_point_value(method, gaps[i], pressures[i]);
  }
  return sum / static_cast<double>(gaps.size());
}

double fs_loss(const Eigen::Ref<const Eigen::VectorXd>& t_tau, double weight) {
  if (t_tau.size() == 0) return 0.0;
  return weight * t_tau.squaredNorm() / static_cast<double>(t_tau.size());
}

}  // namespace pinnc
