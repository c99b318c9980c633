#pragma once

#include "pinnc/geometry.hpp"
#include "pinnc/optimize.hpp"
#include "pinnc/problem.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pinnc {

// ---------------------------------------------------------------------------
// Analytical solutions
// ---------------------------------------------------------------------------

struct LamePolar {
  double srr = 0.0;
  double saa = 0.0;
  double sra = 0.0;
  double ur = 0.0;
};

/// Thick-walled cylinder under internal pressure, plane strain, polar form.
/// Throws when r lies outside [r_inner, r_outer].
LamePolar lame_analytical(double r, double r_inner, double r_outer, double p,
                          double youngs, double poisson);

/// Cartesian mixed-variable field (u_x, u_y, s_xx, s_yy, s_xy) of the Lame
/// solution with exact spatial derivatives, for residual oracles.
void lame_field(double x, double y, double r_inner, double r_outer, double p,
                double youngs, double poisson, Eigen::Ref<Eigen::VectorXd> val,
                Eigen::Ref<Eigen::VectorXd> ddx, Eigen::Ref<Eigen::VectorXd> ddy);

struct BlockSolution {
  double ux = 0.0;
  double uy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
};

/// Uniaxial compression of the block on a frictionless rigid plane.
BlockSolution block_analytical(double x, double y, double p, double youngs,
                               double poisson);
void block_field(double x, double y, double p, double youngs, double poisson,
                 Eigen::Ref<Eigen::VectorXd> val, Eigen::Ref<Eigen::VectorXd> ddx,
                 Eigen::Ref<Eigen::VectorXd> ddy);

/// Half-width b of the Hertzian contact zone.
double hertz_half_width(double radius, double p, double youngs, double poisson);
/// Analytical contact pressure; zero for |x| > b.
double hertz_pressure(double x, double radius, double p, double youngs,
                      double poisson);

// ---------------------------------------------------------------------------
// Error metrics
// ---------------------------------------------------------------------------

/// Vector-based relative L2 over a field group: rows are components summed
/// together, columns are test points. Throws on zero reference norm.
double relative_l2_vector(const Eigen::Ref<const Eigen::MatrixXd>& pred,
                          const Eigen::Ref<const Eigen::MatrixXd>& ref);

/// Quadrature-weighted relative L2 of a single field on a structured mesh
/// (weights are cell measures; arc lengths on a boundary).
double relative_l2_integral(const Eigen::Ref<const Eigen::VectorXd>& pred,
                            const Eigen::Ref<const Eigen::VectorXd>& ref,
                            const Eigen::Ref<const Eigen::VectorXd>& weight);

struct PolarField {
  double ur = 0.0;
  double srr = 0.0;
  double saa = 0.0;
  double sra = 0.0;
};

/// Tensor rotation of (u, sigma) into polar components at (x, y); throws at
/// the origin.
PolarField polar_transform(const Eigen::Vector2d& u, const Eigen::Vector3d& sigma,
                           double x, double y);

// ---------------------------------------------------------------------------
// Case configuration and runners
// ---------------------------------------------------------------------------

enum class Benchmark { Lame, Block, Hertz };
enum class RunMode { Forward, DataEnhanced, Inverse, Surrogate };
enum class Preset { Desk, Full };

struct SurrogateConfig {
  double pressure_min = 0.2;
  double pressure_max = 1.0;
  int chunks = 1;
  std::vector<double> eval_pressures = {0.45, 0.98};
};

struct ProblemConfig {
  Benchmark benchmark = Benchmark::Lame;
  RunMode mode = RunMode::Forward;
  Preset preset = Preset::Desk;
  std::uint64_t seed = 7;

  double youngs = 2000.0;
  double poisson = 0.3;
  double load = 1.0;

  KktMethod kkt = KktMethod::fischer_burmeister_based();
  LossWeights weights;
  std::vector<int> hidden = {25, 25, 25};
  SampleCounts counts;
  AdamConfig adam;
  LbfgsConfig lbfgs;

  double lame_r_inner = 1.0;
  double lame_r_outer = 2.0;
  double block_edge = 1.0;
  HalfCylinderOptions hertz;

  std::string data_csv;                 // DataEnhanced / Inverse measurement file
  double inverse_initial_guess = 0.1;
  SurrogateConfig surrogate;
  int profile_samples = 401;            // per side of the contact arc

  int input_width() const { return mode == RunMode::Surrogate ? 3 : 2; }
  void validate() const;
};

/// Paper-matched defaults per benchmark and mode; the desk preset halves
/// hidden-layer widths and caps L-BFGS at 3000 iterations.
ProblemConfig default_config(Benchmark benchmark, RunMode mode, Preset preset);

/// The benchmark's output transformation (hard boundary conditions and
/// displacement scaling), wired to the mode's pressure source.
OutputTransform make_transform(const ProblemConfig& cfg);

PointSet sample_domain(const ProblemConfig& cfg);

/// Assembles collocation blocks, soft-BC targets, contact data, and (for the
/// surrogate) the chunked three-input replication.
Problem build_problem(const ProblemConfig& cfg, const PointSet& points,
                      const ExperimentalData* exp_data);

struct PressureProfile {
  Eigen::VectorXd x;   // positions along the potential contact arc
  Eigen::VectorXd pc;  // predicted contact pressure, compression positive
  double integral = 0.0;    // trapezoid over arc length, x >= 0 side
  double half_width = 0.0;  // largest |x| with pc >= 5% of its maximum
};

/// Samples p_c = -p_n along the potential contact arc of the Hertz domain.
/// In surrogate mode `pressure` feeds the third input.
PressureProfile contact_pressure_profile(const FieldModel& field,
                                         const ProblemConfig& cfg,
                                         std::optional<double> pressure = {});

/// Deterministically ordered metric map; serialized as the ErrorReport JSON.
struct ErrorReport {
  std::map<std::string, double> metrics;

  double at(const std::string& key) const;
  bool has(const std::string& key) const { return metrics.count(key) > 0; }
};

struct CaseResult {
  NetworkParams params;
  OutputTransform transform;
  PointSet points;
  ErrorReport report;
  std::vector<TrainRecord> records;
  StopReason stop = StopReason::MaxIters;
};

/// Samples the domain, trains with the two-phase schedule, and evaluates the
/// case-specific error report.
CaseResult run_case(const ProblemConfig& cfg, const RecordSink& sink = nullptr);

/// Evaluation-only path used by tests and the CLI on a trained model.
ErrorReport evaluate_case(const ProblemConfig& cfg, const PointSet& points,
                          const NetworkParams& params, const OutputTransform& transform);

/// Draws measurement points (interior + non-contact boundary) and records the
/// model's fields there, mimicking "virtual experiment" data.
ExperimentalData sample_model_data(const FieldModel& field, const ProblemConfig& cfg,
                                   int interior_points, int boundary_points,
                                   std::uint64_t seed);

void save_experimental_csv(const ExperimentalData& data, const std::string& path);

}  // namespace pinnc
