// Acceptance suite: one pass/fail line per criterion, exit nonzero on any
// failure. Criteria 1-3 and 9 are fast; 4-7 train the desk presets; 8 (the
// surrogate study) is slow and only runs when requested with --criteria 8
// or --with-surrogate.

#include "pinnc/benchmarks.hpp"
#include "pinnc/checkpoint.hpp"
#include "pinnc/config.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace pinnc;

namespace {

constexpr double kPi = std::numbers::pi;

struct Criterion {
  int id;
  std::string title;
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back((ok ? "ok: " : "FAIL: ") + what);
  }
  template <typename... Args>
  void checkf(bool ok, const char* fmt, Args... args) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), fmt, args...);
    check(ok, buf);
  }
};

double uniform(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// ---------------------------------------------------------------------------
// Criterion 1: analytical solutions zero BE, CE, and hard-BC residuals.
// ---------------------------------------------------------------------------
Criterion criterion1() {
  Criterion c{1, "oracle residual suite"};
  std::mt19937_64 eng(1);

  // Lame with the corrected radial displacement.
  {
    const MaterialParams mat = MaterialParams::from_engineering(2000.0, 0.3);
    Eigen::VectorXd val(5), ddx(5), ddy(5);
    double be = 0.0, ce = 0.0, bc = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double r = 1.0 + uniform(eng);
      const double a = 0.5 * kPi * uniform(eng);
      lame_field(r * std::cos(a), r * std::sin(a), 1, 2, 1, 2000, 0.3, val, ddx, ddy);
      be = std::max(be, balance_residual(ddx[kSxx], ddy[kSxy], ddx[kSxy], ddy[kSyy])
                            .lpNorm<Eigen::Infinity>());
      Eigen::Matrix2d gu;
      gu << ddx[kUx], ddy[kUx], ddx[kUy], ddy[kUy];
      ce = std::max(ce, constitutive_residual({val[kSxx], val[kSyy], val[kSxy]},
                                              strain_from_grad(gu), mat)
                            .lpNorm<Eigen::Infinity>());
    }
    // Hard BCs: u_x = 0 and s_xy = 0 on x = 0; u_y = 0 and s_xy = 0 on y = 0;
    // s_rr = -p at r = R_i and 0 at r = R_o.
    for (int i = 0; i < 100; ++i) {
      const double r = 1.0 + uniform(eng);
      lame_field(0.0, r, 1, 2, 1, 2000, 0.3, val, ddx, ddy);
      bc = std::max({bc, std::abs(val[kUx]), std::abs(val[kSxy])});
      lame_field(r, 0.0, 1, 2, 1, 2000, 0.3, val, ddx, ddy);
      bc = std::max({bc, std::abs(val[kUy]), std::abs(val[kSxy])});
      const double a = 0.5 * kPi * uniform(eng);
      lame_field(std::cos(a), std::sin(a), 1, 2, 1, 2000, 0.3, val, ddx, ddy);
      const PolarField pf = polar_transform({val[kUx], val[kUy]},
                                            {val[kSxx], val[kSyy], val[kSxy]},
                                            std::cos(a), std::sin(a));
      bc = std::max(bc, std::abs(pf.srr + 1.0));
      lame_field(2 * std::cos(a), 2 * std::sin(a), 1, 2, 1, 2000, 0.3, val, ddx, ddy);
      const PolarField po = polar_transform({val[kUx], val[kUy]},
                                            {val[kSxx], val[kSyy], val[kSxy]},
                                            2 * std::cos(a), 2 * std::sin(a));
      bc = std::max(bc, std::abs(po.srr));
    }
    c.checkf(be <= 1e-10, "Lame balance residual max %.2e <= 1e-10", be);
    c.checkf(ce <= 1e-10, "Lame constitutive residual max %.2e <= 1e-10", ce);
    c.checkf(bc <= 1e-10, "Lame hard-BC residual max %.2e <= 1e-10", bc);
  }

  // Block with the corrected displacement signs.
  {
    const MaterialParams mat = MaterialParams::from_engineering(1.33, 0.33);
    Eigen::VectorXd val(5), ddx(5), ddy(5);
    double be = 0.0, ce = 0.0, bc = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double x = uniform(eng), y = uniform(eng);
      block_field(x, y, 0.1, 1.33, 0.33, val, ddx, ddy);
      be = std::max(be, balance_residual(ddx[kSxx], ddy[kSxy], ddx[kSxy], ddy[kSyy])
                            .lpNorm<Eigen::Infinity>());
      Eigen::Matrix2d gu;
      gu << ddx[kUx], ddy[kUx], ddx[kUy], ddy[kUy];
      ce = std::max(ce, constitutive_residual({val[kSxx], val[kSyy], val[kSxy]},
                                              strain_from_grad(gu), mat)
                            .lpNorm<Eigen::Infinity>());
      block_field(0.0, y, 0.1, 1.33, 0.33, val, ddx, ddy);
      bc = std::max({bc, std::abs(val[kUx]), std::abs(val[kSxy])});
      block_field(x, 1.0, 0.1, 1.33, 0.33, val, ddx, ddy);
      bc = std::max({bc, std::abs(val[kSyy] + 0.1), std::abs(val[kSxy])});
      block_field(1.0, y, 0.1, 1.33, 0.33, val, ddx, ddy);
      bc = std::max({bc, std::abs(val[kSxx]), std::abs(val[kSxy])});
    }
    c.checkf(be <= 1e-10, "block balance residual max %.2e <= 1e-10", be);
    c.checkf(ce <= 1e-10, "block constitutive residual max %.2e <= 1e-10", ce);
    c.checkf(bc <= 1e-10, "block hard-BC residual max %.2e <= 1e-10", bc);
  }

  // Random constant-stress states with their linear displacement fields.
  {
    const MaterialParams mat = MaterialParams::from_engineering(173.0, 0.27);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Eigen::Vector3d sigma{2 * uniform(eng) - 1, 2 * uniform(eng) - 1,
                                  2 * uniform(eng) - 1};
      // Strain solving C eps = sigma under plane strain.
      Eigen::Matrix3d cm;
      cm << mat.lambda + 2 * mat.mu, mat.lambda, 0, mat.lambda,
          mat.lambda + 2 * mat.mu, 0, 0, 0, 2 * mat.mu;
      const Eigen::Vector3d eps = cm.colPivHouseholderQr().solve(sigma);
      Eigen::Matrix2d gu;
      gu << eps[0], eps[2], eps[2], eps[1];  // symmetric gradient
      worst = std::max(worst,
                       constitutive_residual(sigma, strain_from_grad(gu), mat)
                           .lpNorm<Eigen::Infinity>());
      // Constant stresses trivially satisfy balance.
      worst = std::max(worst,
                       balance_residual(0, 0, 0, 0).lpNorm<Eigen::Infinity>());
    }
    c.checkf(worst <= 1e-10, "constant-stress residual max %.2e <= 1e-10", worst);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Criterion 2: differentiation suite.
// ---------------------------------------------------------------------------
Criterion criterion2() {
  Criterion c{2, "differentiation suite"};
  std::mt19937_64 eng(2);

  // Input-Jacobian vs central differences: 100 random (params, x) draws.
  {
    ProblemConfig lame = default_config(Benchmark::Lame, RunMode::Forward, Preset::Desk);
    const OutputTransform transforms[2] = {OutputTransform::identity(5),
                                           make_transform(lame)};
    double worst = 0.0;
    const double h = 1e-5;
    for (int draw = 0; draw < 100; ++draw) {
      Architecture arch{2, draw % 2 ? std::vector<int>{6, 6, 6} : std::vector<int>{8, 8}, 5};
      const NetworkParams p = init_glorot_uniform(arch, 5000 + draw);
      const OutputTransform& t = transforms[draw % 2];
      const Eigen::Vector2d x{0.3 + 1.5 * uniform(eng), 0.3 + 1.5 * uniform(eng)};
      const Eigen::MatrixXd jac = input_jacobian(p, t, x);
      for (int k = 0; k < 2; ++k) {
        Eigen::Vector2d xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        const Eigen::VectorXd fp = forward(p, t, xp);
        const Eigen::VectorXd fm = forward(p, t, xm);
        for (int i = 0; i < 5; ++i) {
          const double fd = (fp[i] - fm[i]) / (2 * h);
          worst = std::max(worst, std::abs(jac(i, k) - fd) /
                                      std::max(1.0, std::abs(jac(i, k))));
        }
      }
    }
    c.checkf(worst <= 1e-6, "input-Jacobian FD deviation max %.2e <= 1e-6", worst);
  }

  // Parameter gradients of every benchmark's full loss on 32-point subsets.
  {
    double worst = 0.0;
    const auto fd_check = [&worst](const Problem& pb, NetworkParams params) {
      ParamGrad grad(params);
      pb.loss_and_grad(params, grad);
      const Eigen::VectorXd g = grad.to_vector();
      Eigen::VectorXd x = params.to_vector();
      const double gmax = g.cwiseAbs().maxCoeff();
      NetworkParams scratch = params;
      const double h = 1e-5;
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double x0 = x[i];
        x[i] = x0 + h;
        scratch.from_vector(x);
        const double lp = pb.loss(NetworkField(scratch, pb.transform)).total;
        x[i] = x0 - h;
        scratch.from_vector(x);
        const double lm = pb.loss(NetworkField(scratch, pb.transform)).total;
        x[i] = x0;
        const double fd = (lp - lm) / (2 * h);
        if (std::abs(g[i]) <= 1e-6 * std::max(1.0, gmax)) continue;
        worst = std::max(worst,
                         std::abs(g[i] - fd) / std::max(std::abs(g[i]), std::abs(fd)));
      }
    };
    for (const Benchmark b : {Benchmark::Lame, Benchmark::Block, Benchmark::Hertz}) {
      ProblemConfig cfg = default_config(b, RunMode::Forward, Preset::Desk);
      cfg.counts = {32, 16, 4, 4};
      fd_check(build_problem(cfg, sample_domain(cfg), nullptr),
               init_glorot_uniform(Architecture{2, {8, 8}, 5}, 91));
    }
    {
      ProblemConfig cfg = default_config(Benchmark::Hertz, RunMode::Inverse, Preset::Desk);
      cfg.counts = {32, 16, 4, 4};
      cfg.data_csv = "unused";
      NetworkParams params = init_glorot_uniform(Architecture{2, {8, 8}, 5}, 92);
      params.add_extra("p", 0.2);
      fd_check(build_problem(cfg, sample_domain(cfg), nullptr), params);
    }
    c.checkf(worst <= 1e-5, "loss-gradient FD deviation max %.2e <= 1e-5", worst);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Criterion 3: NCP suite.
// ---------------------------------------------------------------------------
Criterion criterion3() {
  Criterion c{3, "NCP suite"};

  // FB zero set == KKT set on the brute-force grid.
  {
    bool ok = true;
    int zeros = 0;
    for (int i = 0; i <= 80 && ok; ++i) {
      for (int j = 0; j <= 80; ++j) {
        const double g = -2.0 + 0.05 * i;
        const double p = -2.0 + 0.05 * j;
        const double phi = fischer_burmeister(g, -p);
        const bool kkt = g >= 0 && p <= 0 && std::abs(g * p) <= 1e-12;
        if (kkt != (std::abs(phi) <= 1e-12)) {
          ok = false;
          break;
        }
        if (kkt) ++zeros;
      }
    }
    c.checkf(ok && zeros == 81, "FB zero set == KKT set on 81x81 grid (%d zeros)", zeros);
  }

  // Sigmoid -> sign limit at delta = 1e6. The 1e-9 agreement holds for
  // delta * |arg| >= 25 (e^-25 ~ 1.4e-11); at |arg| = 1e-5 the exact gate
  // deviation is e^-10 ~ 4.5e-5, which we assert as the true bound.
  {
    double worst_far = 0.0, worst_near = 0.0;
    for (double mag : {2.5e-5, 1e-4, 1e-3, 1e-2, 1.0}) {
      for (double s : {-1.0, 1.0}) {
        worst_far = std::max(worst_far, std::abs(sigmoid_gate_gap(s * mag, 1e6) -
                                                 sign_gate_gap(s * mag)));
        worst_far = std::max(worst_far, std::abs(sigmoid_gate_pressure(s * mag, 1e6) -
                                                 sign_gate_pressure(s * mag)));
      }
    }
    for (double s : {-1.0, 1.0}) {
      worst_near = std::max(worst_near, std::abs(sigmoid_gate_gap(s * 1e-5, 1e6) -
                                                 sign_gate_gap(s * 1e-5)));
    }
    c.checkf(worst_far <= 1e-9, "sigmoid==sign within %.1e (<=1e-9) for |arg|>=2.5e-5",
             worst_far);
    c.checkf(worst_near <= 5e-5, "sigmoid-sign gap at |arg|=1e-5 is %.2e (exact e^-10)",
             worst_near);
  }

  // Quadrant dominance of FB^2.
  {
    const auto fb2 = [](double g, double p) {
      const double phi = fischer_burmeister(g, -p);
      return phi * phi;
    };
    const bool ok = fb2(-1, 1) > fb2(-1, -1) && fb2(-1, 1) > fb2(1, 1) &&
                    fb2(-1, 1) > fb2(1, -1);
    c.check(ok, "penetrating-adhesive quadrant dominates FB^2 at |g|=|p|=1");
  }

  // FB^2 differentiable at the origin; the sign-gated term has a one-sided
  // derivative jump there.
  {
    double tail = 0.0;
    for (const auto dir : {std::pair{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {-0.7, 0.4}}) {
      const auto f = [&](double t) {
        const double phi = fischer_burmeister(t * dir.first, t * dir.second);
        return phi * phi;
      };
      const double h = 1e-6;
      tail = std::max(tail, std::abs((f(h) - f(-h)) / (2 * h)));
    }
    c.checkf(tail <= 1e-5, "central differences of FB^2 converge to 0 (%.2e)", tail);

    const auto gated = [](double g) { return sign_gate_gap(g) * g; };
    const double h = 1e-7;
    const double right = (gated(h) - gated(0.0)) / h;
    const double left = (gated(0.0) - gated(-h)) / h;
    c.checkf(std::abs(right - left) > 0.5,
             "sign-gated term one-sided slopes differ (%.2f vs %.2f)", left, right);
  }

  // All three losses vanish simultaneously on admissible states.
  {
    Eigen::VectorXd g(3), p(3);
    g << 0.0, 0.7, 0.0;
    p << -0.4, 0.0, 0.0;
    const bool ok = kkt_loss(KktMethod::sign_based(), g, p) <= 1e-12 &&
                    kkt_loss(KktMethod::sigmoid_based(1e7, 1e7), g, p) <= 1e-12 &&
                    kkt_loss(KktMethod::fischer_burmeister_based(), g, p) <= 1e-12;
    c.check(ok, "sign/Sigmoid/FB losses all vanish on an admissible state");
  }
  return c;
}

// ---------------------------------------------------------------------------
// Training criteria (4-8) and determinism (9).
// ---------------------------------------------------------------------------

Criterion criterion4(CaseResult& lame_out) {
  Criterion c{4, "Lame training (desk)"};
  ProblemConfig cfg = default_config(Benchmark::Lame, RunMode::Forward, Preset::Desk);
  const CaseResult res = run_case(cfg);
  const double eu = res.report.at("e_l2_u");
  const double es = res.report.at("e_l2_sigma");
  const double pde = res.report.at("loss_pde_sum_unweighted");
  c.checkf(eu <= 0.005, "E_L2_u = %.4f%% <= 0.5%%", 100 * eu);
  c.checkf(es <= 0.005, "E_L2_sigma = %.4f%% <= 0.5%%", 100 * es);
  c.checkf(pde <= 1e-5, "summed PDE MSE = %.3e <= 1e-5", pde);
  const double first = res.records.front().loss.total;
  const double last = res.records.back().loss.total;
  c.checkf(last <= 1e-4 * first, "total loss fell by %.1e (>= 4 orders)", first / last);
  lame_out = res;
  return c;
}

Criterion criterion5(CaseResult& block_out) {
  Criterion c{5, "block contact training + method sweep"};
  ProblemConfig cfg = default_config(Benchmark::Block, RunMode::Forward, Preset::Desk);
  const CaseResult fb = run_case(cfg);
  c.checkf(fb.report.at("e_l2_u") <= 0.005, "FB E_L2_u = %.4f%% <= 0.5%%",
           100 * fb.report.at("e_l2_u"));
  c.checkf(fb.report.at("e_l2_sigma") <= 0.005, "FB E_L2_sigma = %.4f%% <= 0.5%%",
           100 * fb.report.at("e_l2_sigma"));
  block_out = fb;

  const auto median_eu = [&cfg](KktMethod::Kind kind) {
    std::vector<double> vals;
    for (std::uint64_t seed : {7ull, 8ull, 9ull}) {
      ProblemConfig run = cfg;
      run.seed = seed;
      run.kkt.kind = kind;
      vals.push_back(run_case(run).report.at("e_l2_u"));
    }
    std::sort(vals.begin(), vals.end());
    return vals[1];
  };
  const double m_fb = median_eu(KktMethod::Kind::FischerBurmeister);
  const double m_sig = median_eu(KktMethod::Kind::SigmoidBased);
  const double m_sign = median_eu(KktMethod::Kind::SignBased);
  c.checkf(m_fb < m_sig && m_sig < m_sign,
           "median E_L2_u ordering FB %.4f%% < Sigmoid %.4f%% < sign %.4f%%",
           100 * m_fb, 100 * m_sig, 100 * m_sign);
  return c;
}

Criterion criterion6(CaseResult& hertz_out) {
  Criterion c{6, "Hertz forward (desk)"};
  ProblemConfig cfg = default_config(Benchmark::Hertz, RunMode::Forward, Preset::Desk);
  const CaseResult res = run_case(cfg);
  const double integral = res.report.at("pc_integral");
  const double hw = res.report.at("pc_half_width");
  const double l2 = res.report.at("pc_profile_l2");
  const double b = hertz_half_width(cfg.hertz.radius, cfg.load, cfg.youngs, cfg.poisson);
  c.checkf(std::abs(integral - 0.5) <= 0.01, "contact integral %.4f within 2%% of 0.5",
           integral);
  c.checkf(hw >= 0.7 * b && hw <= 1.3 * b,
           "detected half-width %.4f within +-30%% of b = %.4f", hw, b);
  c.checkf(l2 <= 0.10, "pressure-profile rel L2 = %.2f%% <= 10%%", 100 * l2);
  hertz_out = res;
  return c;
}

Criterion criterion7(const CaseResult& hertz_case1, const std::string& scratch_dir) {
  Criterion c{7, "inverse identification"};
  ProblemConfig cfg = default_config(Benchmark::Hertz, RunMode::Inverse, Preset::Desk);
  cfg.inverse_initial_guess = 0.1;

  // Virtual measurements sampled from the trained case-1 model.
  NetworkField case1(hertz_case1.params, hertz_case1.transform);
  const ExperimentalData data = sample_model_data(case1, cfg, 100, 100, 0xDA7A);
  const std::string csv = scratch_dir + "/hertz_case1_data.csv";
  save_experimental_csv(data, csv);
  cfg.data_csv = csv;

  const CaseResult res = run_case(cfg);
  const double identified = res.report.at("identified_pressure");
  c.checkf(std::abs(identified - 0.5) / 0.5 <= 0.05,
           "identified p = %.4f within 5%% of 0.5", identified);

  // Convergence-rate break at the Adam -> L-BFGS switch (epoch 2000): the
  // identified parameter approaches 0.5 faster per iteration after the
  // switch than over the late Adam epochs.
  int switch_idx = -1;
  for (std::size_t i = 0; i < res.records.size(); ++i) {
    if (res.records[i].phase == Phase::Lbfgs) {
      switch_idx = static_cast<int>(i);
      break;
    }
  }
  c.check(switch_idx == cfg.adam.epochs, "phase switch recorded exactly at epoch 2000");
  if (switch_idx > 200 && switch_idx + 200 < static_cast<int>(res.records.size())) {
    const auto err_at = [&](int i) {
      return std::abs(res.records[static_cast<std::size_t>(i)].extras.at(0) - 0.5);
    };
    const double pre = err_at(switch_idx - 200) - err_at(switch_idx - 1);
    const double post = err_at(switch_idx) - err_at(switch_idx + 200);
    const double pre_rate = std::max(pre, 0.0) / 200.0;
    const double post_rate = std::max(post, 0.0) / 200.0;
    c.checkf(post_rate > pre_rate,
             "|p-0.5| decay per iteration: %.2e after switch > %.2e before",
             post_rate, pre_rate);
  } else {
    c.check(false, "trajectory long enough to measure the rate break");
  }
  return c;
}

Criterion criterion8() {
  Criterion c{8, "surrogate proof-of-concept"};
  const auto profile_errors = [](int chunks, std::uint64_t seed) {
    ProblemConfig cfg = default_config(Benchmark::Hertz, RunMode::Surrogate, Preset::Desk);
    cfg.surrogate.chunks = chunks;
    cfg.seed = seed;
    cfg.surrogate.eval_pressures = {0.45, 0.98};
    const CaseResult res = run_case(cfg);
    return std::pair{res.report.at("pc_l2_at_p0.45"), res.report.at("pc_l2_at_p0.98")};
  };

  std::vector<double> k1e45, k1e98, k5e45, k5e98;
  for (std::uint64_t seed : {7ull, 8ull, 9ull}) {
    const auto [a45, a98] = profile_errors(1, seed);
    const auto [b45, b98] = profile_errors(5, seed);
    k1e45.push_back(a45);
    k1e98.push_back(a98);
    k5e45.push_back(b45);
    k5e98.push_back(b98);
    std::printf("  [surrogate] seed %llu: k=1 (%.1f%%, %.1f%%)  k=5 (%.1f%%, %.1f%%)\n",
                static_cast<unsigned long long>(seed), 100 * a45, 100 * a98, 100 * b45,
                100 * b98);
    std::fflush(stdout);
  }
  const auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[1];
  };
  const double m145 = median(k1e45), m198 = median(k1e98);
  const double m545 = median(k5e45), m598 = median(k5e98);
  c.checkf(m545 <= m145, "median error at p=0.45: k=5 %.1f%% <= k=1 %.1f%%", 100 * m545,
           100 * m145);
  c.checkf(m598 <= m198, "median error at p=0.98: k=5 %.1f%% <= k=1 %.1f%%", 100 * m598,
           100 * m198);
  c.checkf(m545 <= 0.25 && m598 <= 0.25, "k=5 absolute errors %.1f%%/%.1f%% <= 25%%",
           100 * m545, 100 * m598);
  return c;
}

Criterion criterion9(const CaseResult& lame, const CaseResult& block) {
  Criterion c{9, "determinism"};
  {
    ProblemConfig cfg = default_config(Benchmark::Lame, RunMode::Forward, Preset::Desk);
    const CaseResult again = run_case(cfg);
    c.check(again.report.metrics == lame.report.metrics,
            "Lame rerun reproduces the ErrorReport bit-identically");
    c.check(again.params.to_vector() == lame.params.to_vector(),
            "Lame rerun reproduces the trained parameters bit-identically");
  }
  {
    ProblemConfig cfg = default_config(Benchmark::Block, RunMode::Forward, Preset::Desk);
    const CaseResult again = run_case(cfg);
    c.check(again.report.metrics == block.report.metrics,
            "block rerun reproduces the ErrorReport bit-identically");
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted = {1, 2, 3, 4, 5, 6, 7, 9};
  std::string scratch = "/tmp";
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criteria" && i + 1 < argc) {
      wanted.clear();
      std::stringstream ss(argv[++i]);
      std::string tok;
      while (std::getline(ss, tok, ',')) wanted.insert(std::stoi(tok));
    } else if (arg == "--with-surrogate") {
      wanted.insert(8);
    } else if (arg == "--scratch" && i + 1 < argc) {
      scratch = argv[++i];
    } else {
      std::fprintf(stderr,
                   "usage: acceptance [--criteria 1,2,...] [--with-surrogate] "
                   "[--scratch DIR]\n");
      return 2;
    }
  }

  std::vector<Criterion> results;
  CaseResult lame_case, block_case, hertz_case;
  bool have_lame = false, have_block = false, have_hertz = false;

  const auto run = [&](int id, auto&& fn) {
    if (!wanted.count(id)) return;
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c = fn();
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %d: %s (%.1f s)\n", c.pass ? "PASS" : "FAIL", c.id,
                c.title.c_str(), dt);
    for (const auto& note : c.notes) std::printf("        %s\n", note.c_str());
    std::fflush(stdout);
    results.push_back(std::move(c));
  };

  run(1, criterion1);
  run(2, criterion2);
  run(3, criterion3);
  run(4, [&] {
    Criterion c = criterion4(lame_case);
    have_lame = true;
    return c;
  });
  run(5, [&] {
    Criterion c = criterion5(block_case);
    have_block = true;
    return c;
  });
  run(6, [&] {
    Criterion c = criterion6(hertz_case);
    have_hertz = true;
    return c;
  });
  run(7, [&] {
    if (!have_hertz) {
      ProblemConfig cfg = default_config(Benchmark::Hertz, RunMode::Forward, Preset::Desk);
      hertz_case = run_case(cfg);
      have_hertz = true;
    }
    return criterion7(hertz_case, scratch);
  });
  run(8, criterion8);
  run(9, [&] {
    if (!have_lame) {
      lame_case = run_case(default_config(Benchmark::Lame, RunMode::Forward, Preset::Desk));
      have_lame = true;
    }
    if (!have_block) {
      block_case = run_case(default_config(Benchmark::Block, RunMode::Forward, Preset::Desk));
      have_block = true;
    }
    return criterion9(lame_case, block_case);
  });

  int failures = 0;
  for (const auto& c : results) failures += c.pass ? 0 : 1;
  if (!results.empty()) {
    std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures,
                results.size());
  }
  return failures == 0 ? 0 : 1;
}
