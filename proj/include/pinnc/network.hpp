#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pinnc {

/// Thrown when an evaluation hits non-finite parameters, inputs, or loss
/// terms; `what()` names the offending quantity.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Architecture {
  int input_width = 2;
  std::vector<int> hidden;
  int output_width = 5;

  int layer_count() const { return static_cast<int>(hidden.size()) + 1; }
  int width_in(int layer) const;
  int width_out(int layer) const;
  void validate() const;
  bool operator==(const Architecture&) const = default;
};

/// Weights, biases, and optional extra trainable scalars (inverse mode).
/// Flat layout: per layer the row-major weight matrix then the bias, with
/// extras appended at the very end.
struct NetworkParams {
  Architecture arch;
  std::vector<Eigen::MatrixXd> weights;  // weights[l]: width_out x width_in
  std::vector<Eigen::VectorXd> biases;
  std::vector<std::string> extra_names;
  Eigen::VectorXd extra_values;
  std::uint64_t seed = 0;

  Eigen::Index size() const;
  Eigen::VectorXd to_vector() const;
  void from_vector(const Eigen::Ref<const Eigen::VectorXd>& v);
  bool all_finite() const;
  void add_extra(const std::string& name, double value);
};

/// Mirrors the trainable layout of NetworkParams for gradient accumulation.
struct ParamGrad {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
  Eigen::VectorXd extras;

  explicit ParamGrad(const NetworkParams& like);
  void set_zero();
  Eigen::VectorXd to_vector() const;
};

/// Glorot-uniform weights (bound sqrt(6/(fan_in+fan_out))), zero biases.
/// Identical seeds give bit-identical parameter sets.
NetworkParams init_glorot_uniform(const Architecture& arch, std::uint64_t seed);

/// One linear factor a + bx*x + by*y of a distance-to-boundary function.
struct AffineFactor {
  double a = 0.0;
  double bx = 0.0;
  double by = 0.0;

  double value(double x, double y) const { return a + bx * x + by * y; }
};

enum class OffsetRule { Zero, Constant, NegPressure };

/// Where the applied pressure p in a NegPressure offset comes from.
enum class PressureSource {
  Constant,    // fixed problem parameter
  ExtraParam,  // trainable scalar (inverse identification)
  Input,       // third network input (surrogate mode)
};

/// Per-output rule y_i = g_i(x) + s_i * h_i(x) * N_i(x) with h_i a product
/// of affine factors (empty product = 1, i.e. pure scaling).
struct ComponentTransform {
  OffsetRule offset = OffsetRule::Zero;
  double constant = 0.0;  // used when offset == Constant
  std::vector<AffineFactor> h;
  double scale = 1.0;
};

struct OutputTransform {
  std::vector<ComponentTransform> comps;
  PressureSource pressure_source = PressureSource::Constant;
  double pressure = 0.0;  // used when pressure_source == Constant
  int pressure_extra = 0;  // index into extra trainables
  int pressure_input = 2;  // input column carrying p in surrogate mode

  static OutputTransform identity(int outputs);
  /// Applied pressure for one evaluation point.
  double pressure_value(const NetworkParams& params,
                        const Eigen::Ref<const Eigen::VectorXd>& x) const;
};

/// Cached state of one batched evaluation, consumed by the reverse pass.
struct EvalCache {
  Eigen::MatrixXd inputs;                       // d x N
  std::vector<Eigen::MatrixXd> act;             // act[0] = inputs, act[l] = A_l
  std::vector<Eigen::MatrixXd> dact;            // 1 - A_l^2 per hidden layer
  std::array<std::vector<Eigen::MatrixXd>, 2> tan_pre;  // W_l * U_{l-1,k}
  std::array<std::vector<Eigen::MatrixXd>, 2> tan;      // U_{l,k}
  Eigen::MatrixXd raw;                          // untransformed outputs, m x N
  std::array<Eigen::MatrixXd, 2> raw_tan;       // dN/dx_k
  Eigen::MatrixXd hval, hdx, hdy;               // transform h and gradients
  Eigen::MatrixXd out;                          // transformed outputs
  std::array<Eigen::MatrixXd, 2> jac;           // d(out)/dx, d(out)/dy
  bool with_tangents = false;
};

/// Batched forward pass; with `want_jacobian` also propagates the two
/// spatial tangents so `cache.jac` holds exact d(out)/d(x,y).
void nn_forward(const NetworkParams& params, const OutputTransform& transform,
                const Eigen::Ref<const Eigen::MatrixXd>& inputs,
                bool want_jacobian, EvalCache& cache);

/// Reverse accumulation over the trace recorded by nn_forward. `out_bar`
/// seeds adjoints of the transformed outputs; `jac_bar`, when non-null,
/// seeds adjoints of the spatial Jacobian entries. Accumulates into `grad`.
void nn_backward(const NetworkParams& params, const OutputTransform& transform,
                 const EvalCache& cache,
                 const Eigen::Ref<const Eigen::MatrixXd>& out_bar,
                 const std::array<Eigen::MatrixXd, 2>* jac_bar, ParamGrad& grad);

/// Single-point convenience wrappers.
Eigen::VectorXd forward(const NetworkParams& params, const OutputTransform& transform,
                        const Eigen::Ref<const Eigen::VectorXd>& x);
/// Exact d(outputs)/d(x,y), output_width x 2.
Eigen::MatrixXd input_jacobian(const NetworkParams& params,
                               const OutputTransform& transform,
                               const Eigen::Ref<const Eigen::VectorXd>& x);

}  // namespace pinnc
