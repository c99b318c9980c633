#pragma once

#include "pinnc/elasticity.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace pinnc {

/// Full-batch objective: returns the loss and fills the gradient. The
/// breakdown pointer, when non-null, receives the per-term values for
/// logging.
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& grad,
                                       LossBreakdown* breakdown)>;

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  int epochs = 2000;

  void validate() const;
};

struct AdamState {
  Eigen::VectorXd m;
  Eigen::VectorXd v;
  long t = 0;
};

/// Standard bias-corrected Adam update; throws on non-finite gradients.
void adam_step(AdamState& state, Eigen::VectorXd& x, const Eigen::VectorXd& grad,
               const AdamConfig& cfg);

struct LbfgsConfig {
  int history = 100;
  int max_iters = 15000;
  double grad_tol = 1e-8;       // max-norm of the gradient
  double rel_loss_tol = 1e-9;   // relative decrease over `rel_window` iterations
  int rel_window = 10;
  double c1 = 1e-4;  // Armijo (sufficient decrease)
  double c2 = 0.9;   // strong Wolfe curvature
  int max_line_search = 50;

  void validate() const;
};

enum class StopReason { GradTol, RelLossTol, MaxIters, LineSearchFailed };

std::string to_string(StopReason reason);

enum class Phase { Adam, Lbfgs };

/// One log entry per Adam epoch or L-BFGS iteration. `extras` snapshots the
/// extra trainables (identified parameters in inverse mode).
struct TrainRecord {
  int epoch = 0;
  Phase phase = Phase::Adam;
  LossBreakdown loss;
  double wall_seconds = 0.0;
  std::vector<double> extras;
};

using RecordSink = std::function<void(const TrainRecord&)>;

struct LbfgsResult {
  Eigen::VectorXd x;
  double loss = 0.0;
  StopReason reason = StopReason::MaxIters;
  int iterations = 0;
};

/// Two-loop-recursion L-BFGS with a strong-Wolfe line search. Curvature
/// pairs are kept only when s.y > 1e-10; accepted steps never increase the
/// loss. `epoch_offset` and `extras_tail` only affect the emitted records.
LbfgsResult lbfgs_minimize(const LbfgsConfig& cfg, const Objective& objective,
                           Eigen::VectorXd x0, const RecordSink& sink = nullptr,
                           int epoch_offset = 0, int extras_tail = 0);

struct TwoPhaseResult {
  Eigen::VectorXd x;
  double loss = 0.0;
  StopReason reason = StopReason::MaxIters;
  int adam_epochs = 0;
  int lbfgs_iterations = 0;
};

/// The common training protocol: Adam for `adam.epochs` full-batch epochs,
/// then L-BFGS from the Adam result.
TwoPhaseResult train_two_phase(const Objective& objective, const AdamConfig& adam,
                               const LbfgsConfig& lbfgs, Eigen::VectorXd x0,
                               const RecordSink& sink = nullptr, int extras_tail = 0);

}  // namespace pinnc
