#include "pinnc/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace pinnc {

namespace {
constexpr double kPi = std::numbers::pi;
}

// ---------------------------------------------------------------------------
// Analytical solutions
// ---------------------------------------------------------------------------

LamePolar lame_analytical(double r, double r_inner, double r_outer, double p,
                          double youngs, double poisson) {
  if (r < r_inner - 1e-12 || r > r_outer + 1e-12) {
    throw std::invalid_argument("radius outside the annulus");
  }
  const double a = r_inner * r_inner * p / (r_outer * r_outer - r_inner * r_inner);
  const double c = a * r_outer * r_outer;
  LamePolar out;
  out.srr = a - c / (r * r);
  out.saa = a + c / (r * r);
  out.sra = 0.0;
  // Plane-strain radial displacement consistent with the stresses above.
  out.ur = a * (1.0 + poisson) / youngs *
           ((1.0 - 2.0 * poisson) * r + r_outer * r_outer / r);
  return out;
}

void lame_field(double x, double y, double r_inner, double r_outer, double p,
                double youngs, double poisson, Eigen::Ref<Eigen::VectorXd> val,
                Eigen::Ref<Eigen::VectorXd> ddx, Eigen::Ref<Eigen::VectorXd> ddy) {
  const double a = r_inner * r_inner * p / (r_outer * r_outer - r_inner * r_inner);
  const double c = a * r_outer * r_outer;
  const double k = a * (1.0 + poisson) / youngs;
  const double ro2 = r_outer * r_outer;
  const double one_m_2nu = 1.0 - 2.0 * poisson;

  const double r2 = x * x + y * y;
  const double r4 = r2 * r2;
  const double r6 = r4 * r2;
  const double d = x * x - y * y;  // x^2 - y^2

  val[kUx] = k * (one_m_2nu * x + ro2 * x / r2);
  val[kUy] = k * (one_m_2nu * y + ro2 * y / r2);
  val[kSxx] = a - c * d / r4;
  val[kSyy] = a + c * d / r4;
  val[kSxy] = -2.0 * c * x * y / r4;

  ddx[kUx] = k * (one_m_2nu + ro2 * (y * y - x * x) / r4);
  ddx[kUy] = k * ro2 * (-2.0 * x * y) / r4;
  ddy[kUx] = k * ro2 * (-2.0 * x * y) / r4;
  ddy[kUy] = k * (one_m_2nu + ro2 * (x * x - y * y) / r4);

  // d/dx[(x^2-y^2)/r^4] = 2x(3y^2-x^2)/r^6, d/dy = -2y(3x^2-y^2)/r^6.
  const double ddx_d = 2.0 * x * (3.0 * y * y - x * x) / r6;
  const double ddy_d = -2.0 * y * (3.0 * x * x - y * y) / r6;
  ddx[kSxx] = -c * ddx_d;
  ddy[kSxx] = -c * ddy_d;
  ddx[kSyy] = c * ddx_d;
  ddy[kSyy] = c * ddy_d;
  // d/dx[xy/r^4] = y(r^2-4x^2)/r^6, d/dy = x(r^2-4y^2)/r^6.
  ddx[kSxy] = -2.0 * c * y * (r2 - 4.0 * x * x) / r6;
  ddy[kSxy] = -2.0 * c * x * (r2 - 4.0 * y * y) / r6;
}

BlockSolution block_analytical(double x, double y, double p, double youngs,
                               double poisson) {
  BlockSolution out;
  out.ux = p / youngs * poisson * (1.0 + poisson) * x;
  out.uy = -p / youngs * (1.0 - poisson * poisson) * y;
  out.sxx = 0.0;
  out.syy = -p;
  out.sxy = 0.0;
  return out;
}

void block_field(double x, double y, double p, double youngs, double poisson,
                 Eigen::Ref<Eigen::VectorXd> val, Eigen::Ref<Eigen::VectorXd> ddx,
                 Eigen::Ref<Eigen::VectorXd> ddy) {
  const BlockSolution s = block_analytical(x, y, p, youngs, poisson);
  val[kUx] = s.ux;
  val[kUy] = s.uy;
  val[kSxx] = s.sxx;
  val[kSyy] = s.syy;
  val[kSxy] = s.sxy;
  ddx.setZero();
  ddy.setZero();
  ddx[kUx] = p / youngs * poisson * (1.0 + poisson);
  ddy[kUy] = -p / youngs * (1.0 - poisson * poisson);
}

double hertz_half_width(double radius, double p, double youngs, double poisson) {
  return 2.0 * std::sqrt(2.0 * radius * radius * p * (1.0 - poisson * poisson) /
                         (youngs * kPi));
}

double hertz_pressure(double x, double radius, double p, double youngs,
                      double poisson) {
  const double b = hertz_half_width(radius, p, youngs, poisson);
  if (std::abs(x) >= b) return 0.0;
  return 4.0 * radius * p / (kPi * b * b) * std::sqrt(b * b - x * x);
}

// ---------------------------------------------------------------------------
// Error metrics
// ---------------------------------------------------------------------------

double relative_l2_vector(const Eigen::Ref<const Eigen::MatrixXd>& pred,
                          const Eigen::Ref<const Eigen::MatrixXd>& ref) {
  const double denom = ref.norm();
  if (!(denom > 0.0)) throw std::invalid_argument("zero reference norm");
  return (pred - ref).norm() / denom;
}

double relative_l2_integral(const Eigen::Ref<const Eigen::VectorXd>& pred,
                            const Eigen::Ref<const Eigen::VectorXd>& ref,
                            const Eigen::Ref<const Eigen::VectorXd>& weight) {
  if (pred.size() != ref.size() || pred.size() != weight.size()) {
    throw std::invalid_argument("integral error size mismatch");
  }
  if ((weight.array() <= 0.0).any()) {
    throw std::invalid_argument("degenerate quadrature cell");
  }
  const double denom = (weight.array() * ref.array().square()).sum();
  if (!(denom > 0.0)) throw std::invalid_argument("zero reference norm");
  const double num = (weight.array() * (pred - ref).array().square()).sum();
  return std::sqrt(num / denom);
}

PolarField polar_transform(const Eigen::Vector2d& u, const Eigen::Vector3d& sigma,
                           double x, double y) {
  const double r = std::hypot(x, y);
  if (!(r > 0.0)) throw std::invalid_argument("polar transform undefined at the origin");
  const double c = x / r;
  const double s = y / r;
  PolarField out;
  out.ur = u[0] * c + u[1] * s;
  out.srr = sigma[0] * c * c + sigma[1] * s * s + 2.0 * sigma[2] * c * s;
  out.saa = sigma[0] * s * s + sigma[1] * c * c - 2.0 * sigma[2] * c * s;
  out.sra = (sigma[1] - sigma[0]) * c * s + sigma[2] * (c * c - s * s);
  return out;
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

void ProblemConfig::validate() const {
  if (!(youngs > 0.0)) throw std::invalid_argument("invalid material: E must be positive");
  if (!(poisson >= 0.0) || poisson >= 0.5) {
    throw std::invalid_argument("invalid material: nu must lie in [0, 0.5)");
  }
  if (!std::isfinite(load)) throw std::invalid_argument("load must be finite");
  if (hidden.empty()) throw std::invalid_argument("at least one hidden layer required");
  for (int w : hidden) {
    if (w < 1) throw std::invalid_argument("hidden widths must be >= 1");
  }
  if (counts.interior < 1) throw std::invalid_argument("empty collocation set");
  if (counts.boundary < 4) throw std::invalid_argument("too few boundary points");
  if (counts.test_n1 < 2 || counts.test_n2 < 2) {
    throw std::invalid_argument("test mesh must have at least 2x2 cells");
  }
  weights.validate();
  kkt.validate();
  adam.validate();
  lbfgs.validate();
  if ((mode == RunMode::Inverse || mode == RunMode::Surrogate) &&
      benchmark != Benchmark::Hertz) {
    throw std::invalid_argument("inverse and surrogate modes target the Hertz benchmark");
  }
  if (mode == RunMode::Surrogate) {
    if (surrogate.chunks < 1) throw std::invalid_argument("chunk count k must be >= 1");
    if (!(surrogate.pressure_min < surrogate.pressure_max)) {
      throw std::invalid_argument("empty surrogate pressure range");
    }
    if (!data_csv.empty()) {
      throw std::invalid_argument("surrogate mode does not ingest experimental data");
    }
  }
  if (mode == RunMode::DataEnhanced && data_csv.empty()) {
    throw std::invalid_argument("data-enhanced mode requires a measurement CSV");
  }
  if (profile_samples < 2) throw std::invalid_argument("profile needs >= 2 samples");
}

namespace {

std::vector<int> scaled_hidden(std::vector<int> widths, Preset preset) {
  if (preset == Preset::Desk) {
    for (int& w : widths) w = std::max(1, w / 2);
  }
  return widths;
}

}  // namespace

ProblemConfig default_config(Benchmark benchmark, RunMode mode, Preset preset) {
  ProblemConfig cfg;
  cfg.benchmark = benchmark;
  cfg.mode = mode;
  cfg.preset = preset;
  cfg.lbfgs.max_iters = preset == Preset::Desk ? 3000 : 15000;

  switch (benchmark) {
    case Benchmark::Lame:
      cfg.youngs = 2000.0;
      cfg.poisson = 0.3;
      cfg.load = 1.0;
      cfg.hidden = scaled_hidden({50, 50, 50}, preset);
      cfg.counts = {262, 68, 74, 96};  // 74 x 96 = 7104 test points
      break;
    case Benchmark::Block:
      cfg.youngs = 1.33;
      cfg.poisson = 0.33;
      cfg.load = 0.1;
      cfg.hidden = scaled_hidden({50, 50, 50, 50, 50}, preset);
      cfg.counts = {434, 80, 109, 109};
      cfg.kkt = KktMethod::fischer_burmeister_based();
      break;
    case Benchmark::Hertz:
      cfg.youngs = 200.0;
      cfg.poisson = 0.3;
      cfg.load = 0.5;
      cfg.hertz = HalfCylinderOptions{};
      if (mode == RunMode::Surrogate) {
        cfg.hidden = scaled_hidden({75, 75, 75, 75, 75, 75, 75, 75}, preset);
        cfg.counts = {1600, 346, 22, 28};
        cfg.weights.kkt = 1e4;
      } else {
        cfg.hidden = scaled_hidden({50, 50, 50, 50, 50}, preset);
        cfg.counts = preset == Preset::Desk ? SampleCounts{4800, 1200, 115, 228}
                                            : SampleCounts{40000, 7935, 115, 228};
        cfg.weights.kkt = 1e3;
      }
      if (mode == RunMode::DataEnhanced || mode == RunMode::Inverse) {
        cfg.weights.exp << 1e4, 1e4, 1e-1, 1e-1, 1e-1;
      }
      break;
  }
  return cfg;
}

OutputTransform make_transform(const ProblemConfig& cfg) {
  OutputTransform t = OutputTransform::identity(5);
  const AffineFactor fx{0.0, 1.0, 0.0};   // x
  const AffineFactor fy{0.0, 0.0, 1.0};   // y
  switch (cfg.benchmark) {
    case Benchmark::Lame:
      t.comps[kUx].h = {fx};
      t.comps[kUx].scale = 1.0 / cfg.youngs;
      t.comps[kUy].h = {fy};
      t.comps[kUy].scale = 1.0 / cfg.youngs;
      t.comps[kSxy].h = {fx, fy};
      break;
    case Benchmark::Block: {
      const double l = cfg.block_edge;
      const AffineFactor l_minus_x{l, -1.0, 0.0};
      const AffineFactor l_minus_y{l, 0.0, -1.0};
      t.comps[kUx].h = {fx};
      t.comps[kSxx].h = {l_minus_x};
      t.comps[kSyy].offset = OffsetRule::NegPressure;
      t.comps[kSyy].h = {l_minus_y};
      t.comps[kSxy].h = {fx, l_minus_y, l_minus_x};
      break;
    }
    case Benchmark::Hertz: {
      const AffineFactor minus_x{0.0, -1.0, 0.0};
      const AffineFactor minus_y{0.0, 0.0, -1.0};
      t.comps[kUx].h = {minus_x};
      t.comps[kUx].scale = 1.0 / cfg.youngs;
      t.comps[kUy].scale = 1.0 / cfg.youngs;
      t.comps[kSyy].offset = OffsetRule::NegPressure;
      t.comps[kSyy].h = {minus_y};
      t.comps[kSxy].h = {fx, fy};
      break;
    }
  }
  switch (cfg.mode) {
    case RunMode::Forward:
    case RunMode::DataEnhanced:
      t.pressure_source = PressureSource::Constant;
      t.pressure = cfg.load;
      break;
    case RunMode::Inverse:
      t.pressure_source = PressureSource::ExtraParam;
      t.pressure_extra = 0;
      break;
    case RunMode::Surrogate:
      t.pressure_source = PressureSource::Input;
      t.pressure_input = 2;
      break;
  }
  return t;
}

PointSet sample_domain(const ProblemConfig& cfg) {
  switch (cfg.benchmark) {
    case Benchmark::Lame:
      return sample_quarter_annulus(cfg.lame_r_inner, cfg.lame_r_outer, cfg.counts,
                                    cfg.seed);
    case Benchmark::Block:
      return sample_unit_square(cfg.block_edge, cfg.counts, cfg.seed);
    case Benchmark::Hertz:
      return sample_half_cylinder(cfg.hertz, cfg.counts, cfg.seed);
  }
  throw std::logic_error("unreachable benchmark");
}

namespace {

double next_uniform(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Gathers boundary columns by index list.
void gather_boundary(const PointSet& pts, const std::vector<Eigen::Index>& idx,
                     Eigen::MatrixXd& coords, Eigen::Matrix2Xd& normals,
                     Eigen::VectorXd* yref) {
  coords.resize(2, static_cast<Eigen::Index>(idx.size()));
  normals.resize(2, static_cast<Eigen::Index>(idx.size()));
  if (yref) yref->resize(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    coords.col(static_cast<Eigen::Index>(k)) = pts.boundary.col(idx[k]);
    normals.col(static_cast<Eigen::Index>(k)) = pts.normal.col(idx[k]);
    if (yref) (*yref)[static_cast<Eigen::Index>(k)] = pts.yref[idx[k]];
  }
}

// Replicates 2-row blocks into k chunks of 3-row surrogate inputs with a
// fresh uniformly drawn pressure per row.
Eigen::MatrixXd replicate_with_pressure(const Eigen::MatrixXd& base, int chunks,
                                        double pmin, double pmax,
                                        std::mt19937_64& eng) {
  const Eigen::Index n = base.cols();
  Eigen::MatrixXd out(3, n * chunks);
  for (int c = 0; c < chunks; ++c) {
    out.block(0, c * n, 2, n) = base;
    for (Eigen::Index j = 0; j < n; ++j) {
      out(2, c * n + j) = pmin + (pmax - pmin) * next_uniform(eng);
    }
  }
  return out;
}

template <typename Mat>
Mat tile_columns(const Mat& base, int chunks) {
  Mat out(base.rows(), base.cols() * chunks);
  for (int c = 0; c < chunks; ++c) out.middleCols(c * base.cols(), base.cols()) = base;
  return out;
}

Eigen::VectorXd tile_vector(const Eigen::VectorXd& base, int chunks) {
  Eigen::VectorXd out(base.size() * chunks);
  for (int c = 0; c < chunks; ++c) out.segment(c * base.size(), base.size()) = base;
  return out;
}

}  // namespace

Problem build_problem(const ProblemConfig& cfg, const PointSet& points,
                      const ExperimentalData* exp_data) {
  cfg.validate();
  Problem pb;
  pb.material = MaterialParams::from_engineering(cfg.youngs, cfg.poisson);
  pb.weights = cfg.weights;
  pb.kkt = cfg.kkt;
  pb.transform = make_transform(cfg);
  pb.input_width = cfg.input_width();

  // Soft Neumann edges: everything a hard constraint does not cover.
  std::vector<Eigen::Index> nbc_idx;
  Eigen::MatrixXd nbc_pts;
  Eigen::Matrix2Xd nbc_normals;
  switch (cfg.benchmark) {
    case Benchmark::Lame: {
      // Inner arc (NBC_1) carries the pressure, outer arc (NBC_2) is free.
      nbc_idx = points.boundary_with(BoundaryKind::Neumann);
      gather_boundary(points, nbc_idx, nbc_pts, nbc_normals, nullptr);
      pb.nbc_target.resize(2, static_cast<Eigen::Index>(nbc_idx.size()));
      for (std::size_t k = 0; k < nbc_idx.size(); ++k) {
        const auto& t = points.tag[static_cast<std::size_t>(nbc_idx[k])];
        const Eigen::Index col = static_cast<Eigen::Index>(k);
        if (t.index == 1) {
          pb.nbc_target.col(col) = -cfg.load * nbc_normals.col(col);
        } else {
          pb.nbc_target.col(col).setZero();
        }
      }
      break;
    }
    case Benchmark::Block:
      // Top and right tractions are enforced exactly by the output
      // transformation; no soft Neumann terms remain.
      break;
    case Benchmark::Hertz: {
      // Only the traction-free arcs (NBC_2); the top edge is hard.
      nbc_idx = points.boundary_with(BoundaryTag{BoundaryKind::Neumann, 2});
      gather_boundary(points, nbc_idx, nbc_pts, nbc_normals, nullptr);
      pb.nbc_target = Eigen::Matrix2Xd::Zero(2, static_cast<Eigen::Index>(nbc_idx.size()));
      break;
    }
  }

  // Contact points.
  Eigen::MatrixXd contact_pts;
  Eigen::Matrix2Xd contact_normals;
  Eigen::VectorXd contact_yref;
  const auto contact_idx = points.boundary_with(BoundaryKind::Contact);
  gather_boundary(points, contact_idx, contact_pts, contact_normals, &contact_yref);

  if (cfg.mode == RunMode::Surrogate) {
    std::mt19937_64 eng(cfg.seed ^ 0x700c0ffee5ull);
    const int k = cfg.surrogate.chunks;
    const double pmin = cfg.surrogate.pressure_min;
    const double pmax = cfg.surrogate.pressure_max;
    pb.interior = replicate_with_pressure(points.interior, k, pmin, pmax, eng);
    if (nbc_pts.cols() > 0) {
      pb.nbc_points = replicate_with_pressure(nbc_pts, k, pmin, pmax, eng);
      pb.nbc_normal = tile_columns(nbc_normals, k);
      pb.nbc_target = tile_columns(Eigen::Matrix2Xd(pb.nbc_target), k);
    }
    if (contact_pts.cols() > 0) {
      pb.contact_points = replicate_with_pressure(contact_pts, k, pmin, pmax, eng);
      pb.contact_normal = tile_columns(contact_normals, k);
      pb.contact_yref = tile_vector(contact_yref, k);
    }
  } else {
    pb.interior = points.interior;
    pb.nbc_points = std::move(nbc_pts);
    pb.nbc_normal = std::move(nbc_normals);
    pb.contact_points = std::move(contact_pts);
    pb.contact_normal = std::move(contact_normals);
    pb.contact_yref = std::move(contact_yref);
    if (exp_data) pb.exp = *exp_data;
  }

  pb.validate();
  return pb;
}

// ---------------------------------------------------------------------------
// Pressure profile and reports
// ---------------------------------------------------------------------------

PressureProfile contact_pressure_profile(const FieldModel& field,
                                         const ProblemConfig& cfg,
                                         std::optional<double> pressure) {
  const double r = cfg.hertz.radius;
  const double alpha = cfg.hertz.alpha_deg * kPi / 180.0;
  const int per_side = cfg.profile_samples;
  const bool half = cfg.hertz.symmetric_half;
  const int n = half ? per_side : 2 * per_side - 1;
  const double phi0 = half ? 0.0 : -alpha;
  const double dphi = (alpha - phi0) / (n - 1);

  Eigen::MatrixXd inputs(cfg.input_width(), n);
  PressureProfile prof;
  prof.x.resize(n);
  for (int i = 0; i < n; ++i) {
    const double phi = phi0 + i * dphi;
    inputs(0, i) = r * std::sin(phi);
    inputs(1, i) = -r * std::cos(phi);
    if (cfg.input_width() == 3) {
      inputs(2, i) = pressure.value_or(cfg.load);
    }
    prof.x[i] = inputs(0, i);
  }
  Eigen::MatrixXd y, jx, jy;
  field.eval(inputs, false, y, jx, jy);

  prof.pc.resize(n);
  for (int i = 0; i < n; ++i) {
    const double phi = phi0 + i * dphi;
    const Eigen::Vector2d nrm{std::sin(phi), -std::cos(phi)};
    const Eigen::Vector3d sigma{y(kSxx, i), y(kSyy, i), y(kSxy, i)};
    const auto [pn, ttau] = traction_decompose(sigma, nrm, {-nrm[1], nrm[0]});
    prof.pc[i] = -pn;  // compression reported positive
  }

  // Trapezoid over arc length on the x >= 0 side (the convention the
  // reported resultant 0.5 corresponds to).
  double integral = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    const double x0 = prof.x[i];
    const double x1 = prof.x[i + 1];
    if (x1 <= 0.0) continue;
    const double w = (x0 >= 0.0) ? 1.0 : x1 / (x1 - x0);  // clip cell at x = 0
    integral += w * 0.5 * (prof.pc[i] + prof.pc[i + 1]) * r * dphi;
  }
  prof.integral = integral;

  const double peak = prof.pc.maxCoeff();
  double hw = 0.0;
  if (peak > 0.0) {
    for (int i = 0; i < n; ++i) {
      if (prof.pc[i] >= 0.05 * peak) hw = std::max(hw, std::abs(prof.x[i]));
    }
  }
  prof.half_width = hw;
  return prof;
}

double ErrorReport::at(const std::string& key) const {
  const auto it = metrics.find(key);
  if (it == metrics.end()) throw std::out_of_range("no such metric: " + key);
  return it->second;
}

namespace {

// Reference mixed-variable field on arbitrary points, for the two benchmarks
// with a full-field analytical solution.
Eigen::MatrixXd reference_fields(const ProblemConfig& cfg,
                                 const Eigen::Matrix2Xd& pts) {
  Eigen::MatrixXd ref(5, pts.cols());
  Eigen::VectorXd val(5), ddx(5), ddy(5);
  for (Eigen::Index i = 0; i < pts.cols(); ++i) {
    if (cfg.benchmark == Benchmark::Lame) {
      lame_field(pts(0, i), pts(1, i), cfg.lame_r_inner, cfg.lame_r_outer, cfg.load,
                 cfg.youngs, cfg.poisson, val, ddx, ddy);
    } else {
      block_field(pts(0, i), pts(1, i), cfg.load, cfg.youngs, cfg.poisson, val, ddx,
                  ddy);
    }
    ref.col(i) = val;
  }
  return ref;
}

const char* component_name(int row) {
  switch (row) {
    case kUx: return "ux";
    case kUy: return "uy";
    case kSxx: return "sxx";
    case kSyy: return "syy";
    case kSxy: return "sxy";
  }
  return "?";
}

std::string pressure_key(const char* prefix, double p) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s%g", prefix, p);
  return buf;
}

}  // namespace

ErrorReport evaluate_case(const ProblemConfig& cfg, const PointSet& points,
                          const NetworkParams& params,
                          const OutputTransform& transform) {
  ErrorReport rep;
  NetworkField field(params, transform);

  if (cfg.benchmark == Benchmark::Lame || cfg.benchmark == Benchmark::Block) {
    Eigen::MatrixXd pred, jx, jy;
    field.eval(points.test, false, pred, jx, jy);
    const Eigen::MatrixXd ref = reference_fields(cfg, points.test);

    rep.metrics["e_l2_u"] = relative_l2_vector(pred.topRows(2), ref.topRows(2));
    rep.metrics["e_l2_sigma"] = relative_l2_vector(pred.bottomRows(3), ref.bottomRows(3));
    for (int c = 0; c < 5; ++c) {
      const std::string name = component_name(c);
      rep.metrics["max_abs_" + name] =
          (pred.row(c) - ref.row(c)).cwiseAbs().maxCoeff();
      // Per-component vector and integral errors; constant-zero references
      // (block sxx, sxy) have no relative error and are skipped.
      if (ref.row(c).norm() > 0.0) {
        rep.metrics["e_l2_" + name] = relative_l2_vector(pred.row(c), ref.row(c));
        rep.metrics["e_int_" + name] = relative_l2_integral(
            pred.row(c).transpose(), ref.row(c).transpose(), points.test_weight);
      }
    }
    if (cfg.benchmark == Benchmark::Lame) {
      // Polar comparison as in the paper's error tables.
      Eigen::MatrixXd pred_pol(4, points.test_count()), ref_pol(4, points.test_count());
      for (Eigen::Index i = 0; i < points.test_count(); ++i) {
        const double x = points.test(0, i);
        const double y = points.test(1, i);
        const PolarField pp = polar_transform({pred(kUx, i), pred(kUy, i)},
                                              {pred(kSxx, i), pred(kSyy, i), pred(kSxy, i)},
                                              x, y);
        const LamePolar rr = lame_analytical(std::hypot(x, y), cfg.lame_r_inner,
                                             cfg.lame_r_outer, cfg.load, cfg.youngs,
                                             cfg.poisson);
        pred_pol.col(i) << pp.ur, pp.srr, pp.saa, pp.sra;
        ref_pol.col(i) << rr.ur, rr.srr, rr.saa, rr.sra;
      }
      const char* polar_names[4] = {"ur", "srr", "saa", "sra"};
      for (int c = 0; c < 4; ++c) {
        if (ref_pol.row(c).norm() > 0.0) {
          rep.metrics[std::string("e_l2_") + polar_names[c]] =
              relative_l2_vector(pred_pol.row(c), ref_pol.row(c));
          rep.metrics[std::string("e_int_") + polar_names[c]] = relative_l2_integral(
              pred_pol.row(c).transpose(), ref_pol.row(c).transpose(), points.test_weight);
        }
      }
    }
  }

  if (cfg.benchmark == Benchmark::Hertz && cfg.mode != RunMode::Surrogate) {
    const PressureProfile prof = contact_pressure_profile(field, cfg);
    rep.metrics["pc_integral"] = prof.integral;
    rep.metrics["pc_half_width"] = prof.half_width;
    const Eigen::Index np = prof.x.size();
    Eigen::VectorXd ref(np);
    for (Eigen::Index i = 0; i < np; ++i) {
      ref[i] = hertz_pressure(prof.x[i], cfg.hertz.radius, cfg.load, cfg.youngs,
                              cfg.poisson);
    }
    // Trapezoid arc-length weights over the uniformly sampled arc.
    const double span = cfg.hertz.alpha_deg * kPi / 180.0 *
                        (cfg.hertz.symmetric_half ? 1.0 : 2.0);
    Eigen::VectorXd arc =
        Eigen::VectorXd::Constant(np, cfg.hertz.radius * span / (np - 1));
    arc[0] *= 0.5;
    arc[np - 1] *= 0.5;
    rep.metrics["pc_profile_l2"] =
        relative_l2_vector(prof.pc.transpose(), ref.transpose());
    rep.metrics["pc_profile_l2_int"] = relative_l2_integral(prof.pc, ref, arc);
  }

  if (cfg.mode == RunMode::Inverse) {
    const double identified = params.extra_values[0];
    rep.metrics["identified_pressure"] = identified;
    rep.metrics["identified_rel_error"] = std::abs(identified - cfg.load) / cfg.load;
  }

  if (cfg.mode == RunMode::Surrogate) {
    for (double p : cfg.surrogate.eval_pressures) {
      const PressureProfile prof = contact_pressure_profile(field, cfg, p);
      Eigen::VectorXd ref(prof.x.size());
      for (Eigen::Index i = 0; i < prof.x.size(); ++i) {
        ref[i] = hertz_pressure(prof.x[i], cfg.hertz.radius, p, cfg.youngs, cfg.poisson);
      }
      rep.metrics[pressure_key("pc_l2_at_p", p)] =
          relative_l2_vector(prof.pc.transpose(), ref.transpose());
      rep.metrics[pressure_key("pc_integral_at_p", p)] = prof.integral;
    }
  }

  // Residual diagnostics at the trained parameters (loss terms without
  // experimental data).
  {
    Problem pb = build_problem(cfg, points, nullptr);
    const LossBreakdown bd = pb.loss(field);
    rep.metrics["loss_total"] = bd.total;
    rep.metrics["loss_pde"] = bd.pde;
    rep.metrics["loss_pde_sum_unweighted"] =
        (bd.pde_parts.array() / cfg.weights.pde.array().max(1e-300)).sum();
    rep.metrics["loss_nbc"] = bd.nbc;
    rep.metrics["loss_fs"] = bd.fs;
    rep.metrics["loss_kkt"] = bd.kkt;
  }
  return rep;
}

CaseResult run_case(const ProblemConfig& cfg, const RecordSink& sink) {
  cfg.validate();
  const PointSet points = sample_domain(cfg);

  ExperimentalData exp;
  const ExperimentalData* exp_ptr = nullptr;
  if (cfg.mode == RunMode::DataEnhanced || cfg.mode == RunMode::Inverse) {
    if (cfg.data_csv.empty()) {
      throw std::invalid_argument("missing measurement CSV for this mode");
    }
    exp = ExperimentalData::from_csv(cfg.data_csv);
    exp_ptr = &exp;
  }

  const Problem problem = build_problem(cfg, points, exp_ptr);

  Architecture arch;
  arch.input_width = cfg.input_width();
  arch.hidden = cfg.hidden;
  arch.output_width = 5;
  NetworkParams params = init_glorot_uniform(arch, cfg.seed);
  if (cfg.mode == RunMode::Inverse) {
    params.add_extra("p", cfg.inverse_initial_guess);
  }

  NetworkParams scratch = params;
  ParamGrad grad(scratch);
  const Objective objective = [&problem, &scratch, &grad](
                                  const Eigen::VectorXd& x, Eigen::VectorXd& g,
                                  LossBreakdown* bd) {
    scratch.from_vector(x);
    grad.set_zero();
    const LossBreakdown b = problem.loss_and_grad(scratch, grad);
    g = grad.to_vector();
    if (bd) *bd = b;
    return b.total;
  };

  CaseResult result;
  const RecordSink collect = [&result, &sink](const TrainRecord& rec) {
    result.records.push_back(rec);
    if (sink) sink(rec);
  };

  const TwoPhaseResult train =
      train_two_phase(objective, cfg.adam, cfg.lbfgs, params.to_vector(), collect,
                      static_cast<int>(params.extra_values.size()));
  params.from_vector(train.x);

  result.params = params;
  result.transform = make_transform(cfg);
  result.stop = train.reason;
  result.report = evaluate_case(cfg, points, params, result.transform);
  result.points = points;
  return result;
}

ExperimentalData sample_model_data(const FieldModel& field, const ProblemConfig& cfg,
                                   int interior_points, int boundary_points,
                                   std::uint64_t seed) {
  ProblemConfig sample_cfg = cfg;
  sample_cfg.counts = {std::max(1, interior_points), std::max(4, boundary_points), 2, 2};
  sample_cfg.seed = seed;
  const PointSet pts = sample_domain(sample_cfg);

  std::vector<Eigen::Vector2d> coords;
  for (Eigen::Index i = 0; i < pts.interior_count(); ++i) {
    coords.emplace_back(pts.interior.col(i));
  }
  for (Eigen::Index i = 0; i < pts.boundary_count(); ++i) {
    // Skip the potential contact arc, as the paper does for its FEM data.
    if (pts.tag[static_cast<std::size_t>(i)].kind == BoundaryKind::Contact) continue;
    coords.emplace_back(pts.boundary.col(i));
  }

  ExperimentalData data;
  data.points.resize(2, static_cast<Eigen::Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) {
    data.points.col(static_cast<Eigen::Index>(i)) = coords[i];
  }
  Eigen::MatrixXd y, jx, jy;
  field.eval(data.points, false, y, jx, jy);
  for (int c = 0; c < 5; ++c) {
    for (Eigen::Index i = 0; i < data.points.cols(); ++i) {
      data.sample_index[static_cast<std::size_t>(c)].push_back(i);
      data.sample_value[static_cast<std::size_t>(c)].push_back(y(c, i));
    }
  }
  return data;
}

void save_experimental_csv(const ExperimentalData& data, const std::string& path) {
  std::ostringstream os;
  os << "x,y,ux,uy,sxx,syy,sxy\n";
  // Build dense per-point cells; absent samples stay empty.
  const Eigen::Index n = data.point_count();
  std::array<std::vector<std::string>, 5> cells;
  for (int c = 0; c < 5; ++c) {
    cells[static_cast<std::size_t>(c)].assign(static_cast<std::size_t>(n), "");
    const auto& idx = data.sample_index[static_cast<std::size_t>(c)];
    const auto& val = data.sample_value[static_cast<std::size_t>(c)];
    for (std::size_t k = 0; k < idx.size(); ++k) {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", val[k]);
      cells[static_cast<std::size_t>(c)][static_cast<std::size_t>(idx[k])] = buf;
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g", data.points(0, i), data.points(1, i));
    os << buf;
    for (int c = 0; c < 5; ++c) {
      os << ',' << cells[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
    }
    os << '\n';
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << os.str();
}

}  // namespace pinnc
