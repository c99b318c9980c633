#pragma once

#include <Eigen/Dense>

#include <stdexcept>

namespace pinnc {

/// Normal gap from the projected distance onto the rigid flat surface:
/// g_n = (Y + u_y) / |n_y| with Y the reference height above the plane.
/// Positive means separated, negative penetrating. Throws on |n_y| <= 1e-12
/// (sharp edge without a well-defined projection).
double gap(double yref, double u_y, double n_y);

/// Contact traction t_c = sigma . n split into normal pressure p_n = t_c . n
/// and tangential part t_tau = t_c . tau. Stress order (xx, yy, xy).
std::pair<double, double> traction_decompose(const Eigen::Vector3d& sigma,
                                             const Eigen::Vector2d& n,
                                             const Eigen::Vector2d& tau);

/// Fischer-Burmeister NCP function phi(a,b) = a + b - sqrt(a^2 + b^2);
/// phi = 0 iff a >= 0, b >= 0, ab = 0.
double fischer_burmeister(double a, double b);

struct KktMethod {
  enum class Kind { SignBased, SigmoidBased, FischerBurmeister };
  Kind kind = Kind::FischerBurmeister;
  double delta_g = 10.0;   // Sigmoid gate steepness on the gap
  double delta_p = 100.0;  // Sigmoid gate steepness on the pressure
  double w1 = 1.0;         // sign/Sigmoid: gap term; FB: the single weight
  double w2 = 1.0;
  double w3 = 1.0;

  void validate() const;
  static KktMethod sign_based(double w1 = 1, double w2 = 1, double w3 = 1);
  static KktMethod sigmoid_based(double delta_g = 10, double delta_p = 100,
                                 double w1 = 1, double w2 = 1, double w3 = 1);
  static KktMethod fischer_burmeister_based(double w = 1);
};

/// Gate factors of the non-penetration and no-adhesion terms. sgn(0) := 0,
/// so a zero gap contributes (1/2) * 0 to the gated term.
double sign_gate_gap(double g);        // (1 - sgn(g)) / 2
double sign_gate_pressure(double p);   // (1 + sgn(p)) / 2
double sigmoid_gate_gap(double g, double delta);       // 1 / (1 + e^{d g})
double sigmoid_gate_pressure(double p, double delta);  // 1 / (1 + e^{-d p})

/// KKT soft-constraint loss over the contact points; every |.| is the MSE
/// over the given samples.
double kkt_loss(const KktMethod& method,
                const Eigen::Ref<const Eigen::VectorXd>& gaps,
                const Eigen::Ref<const Eigen::VectorXd>& pressures);

/// Frictionless-sliding loss w * MSE(t_tau).
double fs_loss(const Eigen::Ref<const Eigen::VectorXd>& t_tau, double weight);

/// d(per-point KKT contribution)/d(g, p) for the given method, excluding
/// the 1/N of the MSE. Used by the loss assembly's reverse pass.
void kkt_point_derivative(const KktMethod& method, double g, double p,
                          double& dg, double& dp);
/// The per-point KKT contribution itself (sum of the weighted squared terms).
double kkt_point_value(const KktMethod& method, double g, double p);

}  // namespace pinnc
