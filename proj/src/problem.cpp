#include "pinnc/problem.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pinnc {

void NetworkField::eval(const Eigen::Ref<const Eigen::MatrixXd>& inputs, bool want_jac,
                        Eigen::MatrixXd& y, Eigen::MatrixXd& jx,
                        Eigen::MatrixXd& jy) const {
  EvalCache cache;
  nn_forward(*params_, *transform_, inputs, want_jac, cache);
  y = std::move(cache.out);
  if (want_jac) {
    jx = std::move(cache.jac[0]);
    jy = std::move(cache.jac[1]);
  }
}

void AnalyticField::eval(const Eigen::Ref<const Eigen::MatrixXd>& inputs, bool want_jac,
                         Eigen::MatrixXd& y, Eigen::MatrixXd& jx,
                         Eigen::MatrixXd& jy) const {
  const Eigen::Index n = inputs.cols();
  y.resize(5, n);
  jx.resize(5, n);
  jy.resize(5, n);
  Eigen::VectorXd val(5), ddx(5), ddy(5);
  for (Eigen::Index c = 0; c < n; ++c) {
    fn_(inputs(0, c), inputs(1, c), val, ddx, ddy);
    y.col(c) = val;
    jx.col(c) = ddx;
    jy.col(c) = ddy;
  }
  (void)want_jac;
}

bool ExperimentalData::empty() const {
  for (const auto& idx : sample_index) {
    if (!idx.empty()) return false;
  }
  return true;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_num(const std::string& s, int line_no) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("experimental CSV line " + std::to_string(line_no) +
                             ": malformed number '" + s + "'");
  }
  return v;
}

}  // namespace

ExperimentalData ExperimentalData::from_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open experimental data: " + path);
  std::string line;
  if (!std::getline(f, line)) throw std::runtime_error("empty experimental CSV");
  const auto header = split_line(line);
  if (header.size() < 2 || header[0] != "x" || header[1] != "y") {
    throw std::runtime_error("experimental CSV must start with columns x,y");
  }
  const std::array<std::string, 5> known = {"ux", "uy", "sxx", "syy", "sxy"};
  std::vector<int> component_of(header.size(), -1);
  for (std::size_t c = 2; c < header.size(); ++c) {
    bool found = false;
    for (int k = 0; k < 5; ++k) {
      if (header[c] == known[static_cast<std::size_t>(k)]) {
        component_of[c] = k;
        found = true;
      }
    }
    if (!found) {
      throw std::runtime_error("unknown experimental CSV column: " + header[c]);
    }
  }

  std::vector<double> xs, ys;
  ExperimentalData data;
  int line_no = 1;
  while (std::getline(f, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_line(line);
    if (fields.size() != header.size()) {
      throw std::runtime_error("experimental CSV line " + std::to_string(line_no) +
                               ": field count mismatch");
    }
    const Eigen::Index point = static_cast<Eigen::Index>(xs.size());
    xs.push_back(parse_num(fields[0], line_no));
    ys.push_back(parse_num(fields[1], line_no));
    for (std::size_t c = 2; c < fields.size(); ++c) {
      if (fields[c].empty()) continue;  // masked-out cell
      const int comp = component_of[c];
      data.sample_index[static_cast<std::size_t>(comp)].push_back(point);
      data.sample_value[static_cast<std::size_t>(comp)].push_back(
          parse_num(fields[c], line_no));
    }
  }
  data.points.resize(2, static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    data.points(0, static_cast<Eigen::Index>(i)) = xs[i];
    data.points(1, static_cast<Eigen::Index>(i)) = ys[i];
  }
  return data;
}

void Problem::validate() const {
  if (interior.cols() == 0) {
    throw std::invalid_argument("empty collocation set");
  }
  weights.validate();
  kkt.validate();
  if (interior.rows() != input_width) {
    throw std::invalid_argument("interior point width mismatch");
  }
  for (Eigen::Index i = 0; i < contact_points.cols(); ++i) {
    if (std::abs(contact_normal(1, i)) <= 1e-12) {
      throw std::domain_error("contact point with |n_y| <= 1e-12 (sharp edge)");
    }
  }
  if (contact_yref.size() != contact_points.cols()) {
    throw std::invalid_argument("contact yref size mismatch");
  }
}

namespace {

struct BlockEval {
  Eigen::MatrixXd y, jx, jy;
  EvalCache cache;  // only filled on the gradient path
};

// Shared implementation of loss value and (optionally) gradient. When
// `params`/`grad` are set the network path with reverse accumulation runs;
// otherwise `field` supplies values.
LossBreakdown eval_impl(const Problem& pb, const FieldModel* field,
                        const NetworkParams* params, ParamGrad* grad,
                        bool include_contact) {
  pb.validate();
  const bool with_grad = grad != nullptr;
  LossBreakdown out;
  const auto& mat = pb.material;
  const double lp2m = mat.lambda + 2.0 * mat.mu;

  const auto eval_block = [&](const Eigen::Ref<const Eigen::MatrixXd>& pts,
                              bool want_jac, BlockEval& be) {
    if (with_grad) {
      nn_forward(*params, pb.transform, pts, want_jac, be.cache);
      be.y = be.cache.out;
      if (want_jac) {
        be.jx = be.cache.jac[0];
        be.jy = be.cache.jac[1];
      }
    } else {
      field->eval(pts, want_jac, be.y, be.jx, be.jy);
    }
  };

  const auto backprop = [&](BlockEval& be, const Eigen::MatrixXd& ybar,
                            const std::array<Eigen::MatrixXd, 2>* jbar) {
    if (with_grad) nn_backward(*params, pb.transform, be.cache, ybar, jbar, *grad);
  };

  const auto check_finite = [](double v, const char* term) {
    if (!std::isfinite(v)) {
      throw EvalError(std::string("non-finite loss term: ") + term);
    }
  };

  // ---- PDE residuals on the collocation points ----
  {
    const Eigen::Index n_total = pb.interior.cols();
    Eigen::Matrix<double, 5, 1> ssq = Eigen::Matrix<double, 5, 1>::Zero();
    for (Eigen::Index start = 0; start < n_total; start += pb.block_size) {
      const Eigen::Index n = std::min<Eigen::Index>(pb.block_size, n_total - start);
      BlockEval be;
      eval_block(pb.interior.middleCols(start, n), true, be);

      Eigen::Matrix<double, 5, Eigen::Dynamic> res(5, n);
      res.row(0) = be.jx.row(kSxx) + be.jy.row(kSxy) +
                   Eigen::RowVectorXd::Constant(n, pb.body_force[0]);
      res.row(1) = be.jx.row(kSxy) + be.jy.row(kSyy) +
                   Eigen::RowVectorXd::Constant(n, pb.body_force[1]);
      res.row(2) = be.y.row(kSxx) - lp2m * be.jx.row(kUx) - mat.lambda * be.jy.row(kUy);
      res.row(3) = be.y.row(kSyy) - mat.lambda * be.jx.row(kUx) - lp2m * be.jy.row(kUy);
      res.row(4) = be.y.row(kSxy) -
                   mat.mu * (be.jy.row(kUx) + be.jx.row(kUy));
      for (int i = 0; i < 5; ++i) ssq[i] += res.row(i).squaredNorm();

      if (with_grad) {
        Eigen::MatrixXd ybar = Eigen::MatrixXd::Zero(5, n);
        std::array<Eigen::MatrixXd, 2> jbar = {Eigen::MatrixXd::Zero(5, n),
                                               Eigen::MatrixXd::Zero(5, n)};
        Eigen::Matrix<double, 5, 1> f;
        for (int i = 0; i < 5; ++i) {
          f[i] = 2.0 * pb.weights.pde[i] / static_cast<double>(n_total);
        }
        jbar[0].row(kSxx) += f[0] * res.row(0);
        jbar[1].row(kSxy) += f[0] * res.row(0);
        jbar[0].row(kSxy) += f[1] * res.row(1);
        jbar[1].row(kSyy) += f[1] * res.row(1);
        ybar.row(kSxx) += f[2] * res.row(2);
        jbar[0].row(kUx) -= lp2m * f[2] * res.row(2);
        jbar[1].row(kUy) -= mat.lambda * f[2] * res.row(2);
        ybar.row(kSyy) += f[3] * res.row(3);
        jbar[0].row(kUx) -= mat.lambda * f[3] * res.row(3);
        jbar[1].row(kUy) -= lp2m * f[3] * res.row(3);
        ybar.row(kSxy) += f[4] * res.row(4);
        jbar[1].row(kUx) -= mat.mu * f[4] * res.row(4);
        jbar[0].row(kUy) -= mat.mu * f[4] * res.row(4);
        backprop(be, ybar, &jbar);
      }
    }
    for (int i = 0; i < 5; ++i) {
      out.pde_parts[i] = pb.weights.pde[i] * ssq[i] / static_cast<double>(n_total);
    }
    out.pde = out.pde_parts.sum();
    check_finite(out.pde, "PDE");
  }

  // ---- Soft Dirichlet terms; NaN target entries skip that component ----
  if (pb.dbc_points.cols() > 0) {
    const Eigen::Index n_total = pb.dbc_points.cols();
    Eigen::Vector2d count = Eigen::Vector2d::Zero();
    for (int c = 0; c < 2; ++c) {
      for (Eigen::Index j = 0; j < n_total; ++j) {
        if (std::isfinite(pb.dbc_target(c, j))) count[c] += 1.0;
      }
    }
    Eigen::Vector2d ssq = Eigen::Vector2d::Zero();
    for (Eigen::Index start = 0; start < n_total; start += pb.block_size) {
      const Eigen::Index n = std::min<Eigen::Index>(pb.block_size, n_total - start);
      BlockEval be;
      eval_block(pb.dbc_points.middleCols(start, n), false, be);
      Eigen::MatrixXd ybar = Eigen::MatrixXd::Zero(5, n);
      for (int c = 0; c < 2; ++c) {
        if (count[c] == 0.0) continue;
        for (Eigen::Index j = 0; j < n; ++j) {
          const double target = pb.dbc_target(c, start + j);
          if (!std::isfinite(target)) continue;
          const double r = be.y(c, j) - target;
          ssq[c] += r * r;
          if (with_grad) ybar(c, j) += 2.0 * pb.weights.dbc[c] / count[c] * r;
        }
      }
      if (with_grad) backprop(be, ybar, nullptr);
    }
    for (int c = 0; c < 2; ++c) {
      if (count[c] > 0.0) out.dbc += pb.weights.dbc[c] * ssq[c] / count[c];
    }
    check_finite(out.dbc, "DBC");
  }

  // ---- Soft Neumann terms: traction residual sigma.n - t_hat ----
  if (pb.nbc_points.cols() > 0) {
    const Eigen::Index n_total = pb.nbc_points.cols();
    Eigen::Vector2d ssq = Eigen::Vector2d::Zero();
    for (Eigen::Index start = 0; start < n_total; start += pb.block_size) {
      const Eigen::Index n = std::min<Eigen::Index>(pb.block_size, n_total - start);
      BlockEval be;
      eval_block(pb.nbc_points.middleCols(start, n), false, be);
      const Eigen::ArrayXd nx = pb.nbc_normal.row(0).segment(start, n).transpose();
      const Eigen::ArrayXd ny = pb.nbc_normal.row(1).segment(start, n).transpose();
      const Eigen::ArrayXd sxx = be.y.row(kSxx).transpose();
      const Eigen::ArrayXd syy = be.y.row(kSyy).transpose();
      const Eigen::ArrayXd sxy = be.y.row(kSxy).transpose();
      const Eigen::ArrayXd tx =
          sxx * nx + sxy * ny - pb.nbc_target.row(0).segment(start, n).transpose().array();
      const Eigen::ArrayXd ty =
          sxy * nx + syy * ny - pb.nbc_target.row(1).segment(start, n).transpose().array();
      ssq[0] += (tx * tx).sum();
      ssq[1] += (ty * ty).sum();
      if (with_grad) {
        const double fx = 2.0 * pb.weights.nbc[0] / static_cast<double>(n_total);
        const double fy = 2.0 * pb.weights.nbc[1] / static_cast<double>(n_total);
        Eigen::MatrixXd ybar = Eigen::MatrixXd::Zero(5, n);
        ybar.row(kSxx) = (fx * tx * nx).matrix().transpose();
        ybar.row(kSyy) = (fy * ty * ny).matrix().transpose();
        ybar.row(kSxy) = (fx * tx * ny + fy * ty * nx).matrix().transpose();
        backprop(be, ybar, nullptr);
      }
    }
    out.nbc = (pb.weights.nbc[0] * ssq[0] + pb.weights.nbc[1] * ssq[1]) /
              static_cast<double>(n_total);
    check_finite(out.nbc, "NBC");
  }

  // ---- Experimental data terms ----
  if (pb.exp.point_count() > 0 && !pb.exp.empty()) {
    // Experimental point sets are modest; evaluate in one block.
    BlockEval be;
    eval_block(pb.exp.points, false, be);
    Eigen::MatrixXd ybar;
    if (with_grad) ybar = Eigen::MatrixXd::Zero(5, pb.exp.point_count());
    for (int c = 0; c < 5; ++c) {
      const auto& idx = pb.exp.sample_index[static_cast<std::size_t>(c)];
      const auto& val = pb.exp.sample_value[static_cast<std::size_t>(c)];
      if (idx.empty()) continue;
      double ssq = 0.0;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        const double r = be.y(c, idx[k]) - val[k];
        ssq += r * r;
        if (with_grad) {
          ybar(c, idx[k]) +=
              2.0 * pb.weights.exp[c] / static_cast<double>(idx.size()) * r;
        }
      }
      out.exp += pb.weights.exp[c] * ssq / static_cast<double>(idx.size());
    }
    if (with_grad) backprop(be, ybar, nullptr);
    check_finite(out.exp, "EXP");
  }

  // ---- Contact terms: frictionless sliding and KKT ----
  if (include_contact && pb.contact_points.cols() > 0) {
    const Eigen::Index n_total = pb.contact_points.cols();
    double ssq_fs = 0.0;
    double sum_kkt = 0.0;
    for (Eigen::Index start = 0; start < n_total; start += pb.block_size) {
      const Eigen::Index n = std::min<Eigen::Index>(pb.block_size, n_total - start);
      BlockEval be;
      eval_block(pb.contact_points.middleCols(start, n), false, be);
      Eigen::MatrixXd ybar;
      if (with_grad) ybar = Eigen::MatrixXd::Zero(5, n);
      for (Eigen::Index j = 0; j < n; ++j) {
        const double nx = pb.contact_normal(0, start + j);
        const double ny = pb.contact_normal(1, start + j);
        const double taux = -ny;  // tangent is the normal rotated by +90 deg
        const double tauy = nx;
        const double inv_ny = 1.0 / std::abs(ny);
        // Quadratic-form coefficients of p_n = (sigma.n).n and t_tau.
        const double cp_xx = nx * nx, cp_yy = ny * ny, cp_xy = 2.0 * nx * ny;
        const double ct_xx = nx * taux, ct_yy = ny * tauy;
        const double ct_xy = nx * tauy + ny * taux;

        const double g = (pb.contact_yref[start + j] + be.y(kUy, j)) * inv_ny;
        const double p = cp_xx * be.y(kSxx, j) + cp_yy * be.y(kSyy, j) +
                         cp_xy * be.y(kSxy, j);
        const double ttau = ct_xx * be.y(kSxx, j) + ct_yy * be.y(kSyy, j) +
                            ct_xy * be.y(kSxy, j);

        ssq_fs += ttau * ttau;
        sum_kkt += kkt_point_value(pb.kkt, g, p);

        if (with_grad) {
          const double fbar = 2.0 * pb.weights.fs / static_cast<double>(n_total) * ttau;
          double dg = 0.0, dp = 0.0;
          kkt_point_derivative(pb.kkt, g, p, dg, dp);
          const double gbar = pb.weights.kkt / static_cast<double>(n_total) * dg;
          const double pbar = pb.weights.kkt / static_cast<double>(n_total) * dp;
          ybar(kUy, j) += gbar * inv_ny;
          ybar(kSxx, j) += fbar * ct_xx + pbar * cp_xx;
          ybar(kSyy, j) += fbar * ct_yy + pbar * cp_yy;
          ybar(kSxy, j) += fbar * ct_xy + pbar * cp_xy;
        }
      }
      if (with_grad) backprop(be, ybar, nullptr);
    }
    out.fs = pb.weights.fs * ssq_fs / static_cast<double>(n_total);
    out.kkt = pb.weights.kkt * sum_kkt / static_cast<double>(n_total);
    check_finite(out.fs, "FS");
    check_finite(out.kkt, "KKT");
  }

  out.finish();
  return out;
}

}  // namespace

LossBreakdown Problem::loss(const FieldModel& field) const {
  return eval_impl(*this, &field, nullptr, nullptr, true);
}

LossBreakdown Problem::loss_and_grad(const NetworkParams& params,
                                     ParamGrad& grad) const {
  return eval_impl(*this, nullptr, &params, &grad, true);
}

LossBreakdown assemble_elastic_loss(const Problem& problem, const FieldModel& field) {
  return eval_impl(problem, &field, nullptr, nullptr, false);
}

}  // namespace pinnc
