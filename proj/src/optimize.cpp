#include "pinnc/optimize.hpp"

#include <chrono>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace pinnc {

void AdamConfig::validate() const {
  if (!(lr > 0.0)) throw std::invalid_argument("Adam learning rate must be positive");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw std::invalid_argument("Adam betas must lie in [0, 1)");
  }
  if (epochs < 0) throw std::invalid_argument("Adam epoch count must be >= 0");
}

void LbfgsConfig::validate() const {
  if (history < 1) throw std::invalid_argument("L-BFGS history must be >= 1");
  if (!(grad_tol > 0.0) || !(rel_loss_tol > 0.0)) {
    throw std::invalid_argument("L-BFGS tolerances must be positive");
  }
  if (!(c1 > 0.0 && c1 < c2 && c2 < 1.0)) {
    throw std::invalid_argument("Wolfe constants must satisfy 0 < c1 < c2 < 1");
  }
}

void adam_step(AdamState& state, Eigen::VectorXd& x, const Eigen::VectorXd& grad,
               const AdamConfig& cfg) {
  if (!grad.allFinite()) throw std::invalid_argument("non-finite gradient in Adam step");
  if (state.m.size() != x.size()) {
    state.m = Eigen::VectorXd::Zero(x.size());
    state.v = Eigen::VectorXd::Zero(x.size());
    state.t = 0;
  }
  state.t += 1;
  state.m = cfg.beta1 * state.m + (1.0 - cfg.beta1) * grad;
  state.v = cfg.beta2 * state.v.array().matrix() +
            (1.0 - cfg.beta2) * grad.array().square().matrix();
  const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));
  x.array() -= cfg.lr * (state.m.array() / bc1) /
               ((state.v.array() / bc2).sqrt() + cfg.eps);
}

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::GradTol: return "grad_tol";
    case StopReason::RelLossTol: return "rel_loss_tol";
    case StopReason::MaxIters: return "max_iters";
    case StopReason::LineSearchFailed: return "line_search_failed";
  }
  return "unknown";
}

namespace {

struct WolfeResult {
  double alpha = 0.0;
  double f = 0.0;
  bool ok = false;
};

// Strong Wolfe line search (bracket + zoom with safeguarded interpolation).
// phi(a) = f(x + a d); dphi(a) = g(x + a d) . d. On success, x_out/g_out and
// the breakdown hold the accepted point's state (it is always the last
// evaluation performed).
WolfeResult strong_wolfe(const Objective& objective, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& d, double f0, double dphi0,
                         double alpha_init, double c1, double c2, int max_evals,
                         Eigen::VectorXd& x_out, Eigen::VectorXd& g_out,
                         LossBreakdown* breakdown) {
  WolfeResult res;
  int evals = 0;
  Eigen::VectorXd& g = g_out;

  const auto phi = [&](double a, double& dphi) {
    x_out = x + a * d;
    const double f = objective(x_out, g, breakdown);
    dphi = g.dot(d);
    ++evals;
    return f;
  };

  double alo = 0.0, flo = f0, dlo = dphi0;
  double ahi = 0.0, fhi = 0.0, dhi = 0.0;
  bool bracketed = false;

  double a = alpha_init;
  double a_prev = 0.0, f_prev = f0, d_prev = dphi0;
  const double a_max = 1e10;

  // Bracketing stage.
  while (evals < max_evals) {
    double da = 0.0;
    const double fa = phi(a, da);
    if (fa > f0 + c1 * a * dphi0 || (fa >= f_prev && evals > 1)) {
      alo = a_prev; flo = f_prev; dlo = d_prev;
      ahi = a; fhi = fa; dhi = da;
      bracketed = true;
      break;
    }
    if (std::abs(da) <= -c2 * dphi0) {
      res.alpha = a;
      res.f = fa;
      res.ok = true;
      return res;
    }
    if (da >= 0.0) {
      alo = a; flo = fa; dlo = da;
      ahi = a_prev; fhi = f_prev; dhi = d_prev;
      bracketed = true;
      break;
    }
    a_prev = a; f_prev = fa; d_prev = da;
    a = std::min(2.0 * a, a_max);
    if (a >= a_max) break;
  }
  if (!bracketed) return res;

  // Zoom stage: interpolate, fall back to bisection.
  for (; evals < max_evals;) {
    double a_trial;
    // Quadratic interpolation using (alo, flo, dlo) and fhi.
    const double denom = 2.0 * (fhi - flo - dlo * (ahi - alo));
    if (std::abs(denom) > 1e-300) {
      a_trial = alo - dlo * (ahi - alo) * (ahi - alo) / denom;
    } else {
      a_trial = 0.5 * (alo + ahi);
    }
    const double lo = std::min(alo, ahi), hi = std::max(alo, ahi);
    const double safeguard = 0.1 * (hi - lo);
    if (!(a_trial > lo + safeguard) || !(a_trial < hi - safeguard)) {
      a_trial = 0.5 * (alo + ahi);
    }

    double da = 0.0;
    const double fa = phi(a_trial, da);
    if (fa > f0 + c1 * a_trial * dphi0 || fa >= flo) {
      ahi = a_trial; fhi = fa; dhi = da;
    } else {
      if (std::abs(da) <= -c2 * dphi0) {
        res.alpha = a_trial;
        res.f = fa;
        res.ok = true;
        return res;
      }
      if (da * (ahi - alo) >= 0.0) {
        ahi = alo; fhi = flo; dhi = dlo;
      }
      alo = a_trial; flo = fa; dlo = da;
    }
    if (std::abs(ahi - alo) < 1e-16 * std::max(1.0, std::abs(alo))) break;
  }
  return res;
}

}  // namespace

LbfgsResult lbfgs_minimize(const LbfgsConfig& cfg, const Objective& objective,
                           Eigen::VectorXd x0, const RecordSink& sink,
                           int epoch_offset, int extras_tail) {
  cfg.validate();
  const Eigen::Index n = x0.size();
  LbfgsResult result;
  result.x = std::move(x0);

  Eigen::VectorXd g(n);
  LossBreakdown breakdown;
  double f = objective(result.x, g, &breakdown);
  if (!std::isfinite(f)) throw std::invalid_argument("non-finite initial loss");

  std::deque<Eigen::VectorXd> s_hist, y_hist;
  std::deque<double> rho_hist;
  std::deque<double> f_hist;  // for the relative-decrease test
  f_hist.push_back(f);

  const auto start = std::chrono::steady_clock::now();
  const auto emit = [&](int iter) {
    if (!sink) return;
    TrainRecord rec;
    rec.epoch = epoch_offset + iter;
    rec.phase = Phase::Lbfgs;
    rec.loss = breakdown;
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (Eigen::Index i = n - extras_tail; i < n; ++i) rec.extras.push_back(result.x[i]);
    sink(rec);
  };

  int iter = 0;
  for (; iter < cfg.max_iters; ++iter) {
    if (g.lpNorm<Eigen::Infinity>() <= cfg.grad_tol) {
      result.reason = StopReason::GradTol;
      break;
    }

    // Two-loop recursion.
    Eigen::VectorXd q = g;
    const int m = static_cast<int>(s_hist.size());
    std::vector<double> alpha(static_cast<std::size_t>(m));
    for (int i = m - 1; i >= 0; --i) {
      alpha[static_cast<std::size_t>(i)] =
          rho_hist[static_cast<std::size_t>(i)] * s_hist[static_cast<std::size_t>(i)].dot(q);
      q -= alpha[static_cast<std::size_t>(i)] * y_hist[static_cast<std::size_t>(i)];
    }
    if (m > 0) {
      const auto& s = s_hist.back();
      const auto& y = y_hist.back();
      q *= s.dot(y) / y.squaredNorm();
    }
    for (int i = 0; i < m; ++i) {
      const double beta =
          rho_hist[static_cast<std::size_t>(i)] * y_hist[static_cast<std::size_t>(i)].dot(q);
      q += (alpha[static_cast<std::size_t>(i)] - beta) * s_hist[static_cast<std::size_t>(i)];
    }
    Eigen::VectorXd d = -q;

    double dphi0 = g.dot(d);
    if (dphi0 >= 0.0) {
      // Not a descent direction (stale curvature); restart from steepest descent.
      d = -g;
      dphi0 = g.dot(d);
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
    }

    const double alpha_init = (iter == 0 || s_hist.empty())
                                  ? std::min(1.0, 1.0 / std::max(1e-12, d.norm()))
                                  : 1.0;
    Eigen::VectorXd x_new(n), g_new(n);
    const WolfeResult ls = strong_wolfe(objective, result.x, d, f, dphi0, alpha_init,
                                        cfg.c1, cfg.c2, cfg.max_line_search, x_new,
                                        g_new, &breakdown);
    if (!ls.ok) {
      result.reason = StopReason::LineSearchFailed;
      break;
    }

    const Eigen::VectorXd s = x_new - result.x;
    const Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-10) {
      s_hist.push_back(s);
      y_hist.push_back(y);
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > cfg.history) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }

    result.x = std::move(x_new);
    g = std::move(g_new);
    f = ls.f;
    emit(iter + 1);

    f_hist.push_back(f);
    if (static_cast<int>(f_hist.size()) > cfg.rel_window + 1) f_hist.pop_front();
    if (static_cast<int>(f_hist.size()) == cfg.rel_window + 1) {
      const double drop = f_hist.front() - f;
      if (drop <= cfg.rel_loss_tol * std::max(1.0, std::abs(f))) {
        result.reason = StopReason::RelLossTol;
        ++iter;
        break;
      }
    }
  }
  if (iter >= cfg.max_iters) result.reason = StopReason::MaxIters;

  result.loss = f;
  result.iterations = iter;
  return result;
}

TwoPhaseResult train_two_phase(const Objective& objective, const AdamConfig& adam,
                               const LbfgsConfig& lbfgs, Eigen::VectorXd x0,
                               const RecordSink& sink, int extras_tail) {
  adam.validate();
  lbfgs.validate();
  TwoPhaseResult out;
  Eigen::VectorXd x = std::move(x0);
  Eigen::VectorXd g(x.size());
  AdamState state;

  const auto start = std::chrono::steady_clock::now();
  for (int epoch = 0; epoch < adam.epochs; ++epoch) {
    LossBreakdown breakdown;
    objective(x, g, &breakdown);
    adam_step(state, x, g, adam);
    if (sink) {
      TrainRecord rec;
      rec.epoch = epoch + 1;
      rec.phase = Phase::Adam;
      rec.loss = breakdown;
      rec.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
              .count();
      for (Eigen::Index i = x.size() - extras_tail; i < x.size(); ++i) {
        rec.extras.push_back(x[i]);
      }
      sink(rec);
    }
  }
  out.adam_epochs = adam.epochs;

  LbfgsResult lr = lbfgs_minimize(lbfgs, objective, std::move(x), sink, adam.epochs,
                                  extras_tail);
  out.x = std::move(lr.x);
  out.loss = lr.loss;
  out.reason = lr.reason;
  out.lbfgs_iterations = lr.iterations;
  return out;
}

}  // namespace pinnc
