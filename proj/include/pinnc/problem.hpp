#pragma once

#include "pinnc/contact.hpp"
#include "pinnc/elasticity.hpp"
#include "pinnc/geometry.hpp"
#include "pinnc/network.hpp"

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace pinnc {

/// Output row order of the mixed-variable field (u_x, u_y, s_xx, s_yy, s_xy).
enum FieldRow { kUx = 0, kUy = 1, kSxx = 2, kSyy = 3, kSxy = 4 };

/// Anything that can evaluate the five mixed-variable fields (and their
/// spatial derivatives) on a batch of inputs: the network, or an analytical
/// solution standing in for it in oracle tests.
class FieldModel {
 public:
  virtual ~FieldModel() = default;
  virtual void eval(const Eigen::Ref<const Eigen::MatrixXd>& inputs, bool want_jac,
                    Eigen::MatrixXd& y, Eigen::MatrixXd& jx,
                    Eigen::MatrixXd& jy) const = 0;
};

class NetworkField : public FieldModel {
 public:
  NetworkField(const NetworkParams& params, const OutputTransform& transform)
      : params_(&params), transform_(&transform) {}
  void eval(const Eigen::Ref<const Eigen::MatrixXd>& inputs, bool want_jac,
            Eigen::MatrixXd& y, Eigen::MatrixXd& jx,
            Eigen::MatrixXd& jy) const override;

 private:
  const NetworkParams* params_;
  const OutputTransform* transform_;
};

/// Closed-form field (value plus spatial derivatives) for oracle substitution.
class AnalyticField : public FieldModel {
 public:
  using Fn = std::function<void(double x, double y, Eigen::Ref<Eigen::VectorXd> val,
                                Eigen::Ref<Eigen::VectorXd> ddx,
                                Eigen::Ref<Eigen::VectorXd> ddy)>;
  explicit AnalyticField(Fn fn) : fn_(std::move(fn)) {}
  void eval(const Eigen::Ref<const Eigen::MatrixXd>& inputs, bool want_jac,
            Eigen::MatrixXd& y, Eigen::MatrixXd& jx,
            Eigen::MatrixXd& jy) const override;

 private:
  Fn fn_;
};

/// Experimental data for the L_EXPs terms. Each field component keeps its
/// own sample subset; components absent from the CSV contribute nothing.
struct ExperimentalData {
  Eigen::MatrixXd points;  // input_width x N
  std::array<std::vector<Eigen::Index>, 5> sample_index;
  std::array<std::vector<double>, 5> sample_value;

  Eigen::Index point_count() const { return points.cols(); }
  bool empty() const;
  /// CSV with header `x,y[,ux][,uy][,sxx][,syy][,sxy]`; empty cells skip
  /// that component at that point.
  static ExperimentalData from_csv(const std::string& path);
};

/// A fully assembled training problem: prepared point blocks, targets, and
/// weights. All loss terms are weighted MSEs; the total is their sum.
struct Problem {
  MaterialParams material;
  LossWeights weights;
  KktMethod kkt;
  OutputTransform transform;
  int input_width = 2;

  Eigen::MatrixXd interior;  // input_width x N_rp collocation points

  Eigen::MatrixXd nbc_points;  // soft Neumann points
  Eigen::Matrix2Xd nbc_normal;
  Eigen::Matrix2Xd nbc_target;  // prescribed traction per point

  Eigen::MatrixXd dbc_points;  // soft Dirichlet points
  Eigen::Matrix2Xd dbc_target;  // NaN entries skip that component

  Eigen::MatrixXd contact_points;
  Eigen::Matrix2Xd contact_normal;
  Eigen::VectorXd contact_yref;

  ExperimentalData exp;

  Eigen::Vector2d body_force = Eigen::Vector2d::Zero();  // fixed zero in all benchmarks
  Eigen::Index block_size = 8192;

  /// Throws on empty collocation set, invalid weights, or a contact normal
  /// with |n_y| <= 1e-12.
  void validate() const;

  /// Loss of an arbitrary field model (value only). The decisive oracle
  /// hook: substituting an analytical solution must zero every residual.
  LossBreakdown loss(const FieldModel& field) const;

  /// Loss and exact gradient with respect to every trainable of `params`.
  LossBreakdown loss_and_grad(const NetworkParams& params, ParamGrad& grad) const;
};

/// Elastic-only loss assembly (PDE + DBC + NBC + EXP) over a point set; the
/// contact terms of `problem` are skipped. Convenience for tests and for
/// problems without contact.
LossBreakdown assemble_elastic_loss(const Problem& problem, const FieldModel& field);

}  // namespace pinnc
