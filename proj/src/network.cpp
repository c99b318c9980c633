#include "pinnc/network.hpp"

#include <cmath>
#include <random>

namespace pinnc {

int Architecture::width_in(int layer) const {
  return layer == 0 ? input_width : hidden[static_cast<std::size_t>(layer - 1)];
}

int Architecture::width_out(int layer) const {
  return layer == layer_count() - 1 ? output_width
                                    : hidden[static_cast<std::size_t>(layer)];
}

void Architecture::validate() const {
  if (input_width < 1 || output_width < 1) {
    throw std::invalid_argument("network widths must be >= 1");
  }
  for (int w : hidden) {
    if (w < 1) throw std::invalid_argument("hidden widths must be >= 1");
  }
}

Eigen::Index NetworkParams::size() const {
  Eigen::Index n = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    n += weights[l].size() + biases[l].size();
  }
  return n + extra_values.size();
}

Eigen::VectorXd NetworkParams::to_vector() const {
  Eigen::VectorXd v(size());
  Eigen::Index at = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    const auto& w = weights[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) v[at++] = w(r, c);
    }
    for (Eigen::Index r = 0; r < biases[l].size(); ++r) v[at++] = biases[l][r];
  }
  for (Eigen::Index i = 0; i < extra_values.size(); ++i) v[at++] = extra_values[i];
  return v;
}

void NetworkParams::from_vector(const Eigen::Ref<const Eigen::VectorXd>& v) {
  if (v.size() != size()) throw std::invalid_argument("parameter vector size mismatch");
  Eigen::Index at = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    auto& w = weights[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = v[at++];
    }
    for (Eigen::Index r = 0; r < biases[l].size(); ++r) biases[l][r] = v[at++];
  }
  for (Eigen::Index i = 0; i < extra_values.size(); ++i) extra_values[i] = v[at++];
}

bool NetworkParams::all_finite() const {
  for (std::size_t l = 0; l < weights.size(); ++l) {
    if (!weights[l].allFinite() || !biases[l].allFinite()) return false;
  }
  return extra_values.allFinite();
}

void NetworkParams::add_extra(const std::string& name, double value) {
  extra_names.push_back(name);
  Eigen::VectorXd grown(extra_values.size() + 1);
  grown.head(extra_values.size()) = extra_values;
  grown[grown.size() - 1] = value;
  extra_values = std::move(grown);
}

ParamGrad::ParamGrad(const NetworkParams& like) {
  weights.reserve(like.weights.size());
  biases.reserve(like.biases.size());
  for (std::size_t l = 0; l < like.weights.size(); ++l) {
    weights.emplace_back(Eigen::MatrixXd::Zero(like.weights[l].rows(), like.weights[l].cols()));
    biases.emplace_back(Eigen::VectorXd::Zero(like.biases[l].size()));
  }
  extras = Eigen::VectorXd::Zero(like.extra_values.size());
}

void ParamGrad::set_zero() {
  for (auto& w : weights) w.setZero();
  for (auto& b : biases) b.setZero();
  extras.setZero();
}

Eigen::VectorXd ParamGrad::to_vector() const {
  Eigen::Index n = extras.size();
  for (std::size_t l = 0; l < weights.size(); ++l) n += weights[l].size() + biases[l].size();
  Eigen::VectorXd v(n);
  Eigen::Index at = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    const auto& w = weights[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) v[at++] = w(r, c);
    }
    for (Eigen::Index r = 0; r < biases[l].size(); ++r) v[at++] = biases[l][r];
  }
  for (Eigen::Index i = 0; i < extras.size(); ++i) v[at++] = extras[i];
  return v;
}

namespace {

double next_uniform(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace

NetworkParams init_glorot_uniform(const Architecture& arch, std::uint64_t seed) {
  arch.validate();
  NetworkParams p;
  p.arch = arch;
  p.seed = seed;
  std::mt19937_64 eng(seed);
  for (int l = 0; l < arch.layer_count(); ++l) {
    const int fan_in = arch.width_in(l);
    const int fan_out = arch.width_out(l);
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    Eigen::MatrixXd w(fan_out, fan_in);
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) {
        w(r, c) = limit * (2.0 * next_uniform(eng) - 1.0);
      }
    }
    p.weights.push_back(std::move(w));
    p.biases.emplace_back(Eigen::VectorXd::Zero(fan_out));
  }
  p.extra_values = Eigen::VectorXd(0);
  return p;
}

OutputTransform OutputTransform::identity(int outputs) {
  OutputTransform t;
  t.comps.assign(static_cast<std::size_t>(outputs), ComponentTransform{});
  return t;
}

double OutputTransform::pressure_value(const NetworkParams& params,
                                       const Eigen::Ref<const Eigen::VectorXd>& x) const {
  switch (pressure_source) {
    case PressureSource::Constant: return pressure;
    case PressureSource::ExtraParam: return params.extra_values[pressure_extra];
    case PressureSource::Input: return x[pressure_input];
  }
  throw std::logic_error("unreachable pressure source");
}

namespace {

// h(x,y), dh/dx, dh/dy for a product of affine factors via the product rule.
void eval_h(const std::vector<AffineFactor>& factors,
            const Eigen::Ref<const Eigen::MatrixXd>& xy, Eigen::Index col,
            double& h, double& hx, double& hy) {
  h = 1.0;
  hx = 0.0;
  hy = 0.0;
  const double x = xy(0, col);
  const double y = xy(1, col);
  for (const auto& f : factors) {
    const double v = f.value(x, y);
    hx = hx * v + h * f.bx;
    hy = hy * v + h * f.by;
    h *= v;
  }
}

}  // namespace

void nn_forward(const NetworkParams& params, const OutputTransform& transform,
                const Eigen::Ref<const Eigen::MatrixXd>& inputs,
                bool want_jacobian, EvalCache& cache) {
  const auto& arch = params.arch;
  if (inputs.rows() != arch.input_width) {
    throw EvalError("input width mismatch: expected " +
                    std::to_string(arch.input_width) + ", got " +
                    std::to_string(inputs.rows()));
  }
  if (!params.all_finite()) throw EvalError("non-finite network parameter");
  if (!inputs.allFinite()) throw EvalError("non-finite network input");
  if (static_cast<int>(transform.comps.size()) != arch.output_width) {
    throw EvalError("transform component count mismatch");
  }

  const Eigen::Index n = inputs.cols();
  const int layers = arch.layer_count();
  cache.with_tangents = want_jacobian;
  cache.inputs = inputs;
  cache.act.assign(static_cast<std::size_t>(layers) + 1, Eigen::MatrixXd());
  cache.dact.assign(static_cast<std::size_t>(layers), Eigen::MatrixXd());
  cache.act[0] = inputs;
  for (int k = 0; k < 2; ++k) {
    cache.tan_pre[k].assign(static_cast<std::size_t>(layers), Eigen::MatrixXd());
    cache.tan[k].assign(static_cast<std::size_t>(layers) + 1, Eigen::MatrixXd());
    if (want_jacobian) {
      cache.tan[k][0] = Eigen::MatrixXd::Zero(arch.input_width, n);
      cache.tan[k][0].row(k).setOnes();
    }
  }

  for (int l = 0; l < layers; ++l) {
    const auto& w = params.weights[static_cast<std::size_t>(l)];
    const auto& b = params.biases[static_cast<std::size_t>(l)];
    Eigen::MatrixXd s = w * cache.act[static_cast<std::size_t>(l)];
    s.colwise() += b;
    if (l < layers - 1) {
      cache.act[static_cast<std::size_t>(l) + 1] = s.array().tanh();
      cache.dact[static_cast<std::size_t>(l)] =
          1.0 - cache.act[static_cast<std::size_t>(l) + 1].array().square();
    } else {
      cache.act[static_cast<std::size_t>(l) + 1] = std::move(s);
    }
    if (want_jacobian) {
      for (int k = 0; k < 2; ++k) {
        cache.tan_pre[k][static_cast<std::size_t>(l)] =
            w * cache.tan[k][static_cast<std::size_t>(l)];
        if (l < layers - 1) {
          cache.tan[k][static_cast<std::size_t>(l) + 1] =
              cache.dact[static_cast<std::size_t>(l)].array() *
              cache.tan_pre[k][static_cast<std::size_t>(l)].array();
        } else {
          cache.tan[k][static_cast<std::size_t>(l) + 1] =
              cache.tan_pre[k][static_cast<std::size_t>(l)];
        }
      }
    }
  }
  cache.raw = cache.act[static_cast<std::size_t>(layers)];
  if (want_jacobian) {
    cache.raw_tan[0] = cache.tan[0][static_cast<std::size_t>(layers)];
    cache.raw_tan[1] = cache.tan[1][static_cast<std::size_t>(layers)];
  }

  // Output transformation y_i = g_i + s_i * h_i * N_i.
  const int m = arch.output_width;
  cache.hval.resize(m, n);
  cache.hdx.resize(m, n);
  cache.hdy.resize(m, n);
  cache.out.resize(m, n);
  if (want_jacobian) {
    cache.jac[0].resize(m, n);
    cache.jac[1].resize(m, n);
  }
  for (Eigen::Index c = 0; c < n; ++c) {
    for (int i = 0; i < m; ++i) {
      const auto& ct = transform.comps[static_cast<std::size_t>(i)];
      double h, hx, hy;
      eval_h(ct.h, inputs, c, h, hx, hy);
      cache.hval(i, c) = h;
      cache.hdx(i, c) = hx;
      cache.hdy(i, c) = hy;
      double g = 0.0;
      switch (ct.offset) {
        case OffsetRule::Zero: break;
        case OffsetRule::Constant: g = ct.constant; break;
        case OffsetRule::NegPressure:
          g = -transform.pressure_value(params, inputs.col(c));
          break;
      }
      cache.out(i, c) = g + ct.scale * h * cache.raw(i, c);
      if (want_jacobian) {
        // g never depends on the spatial inputs x, y.
        cache.jac[0](i, c) = ct.scale * (hx * cache.raw(i, c) + h * cache.raw_tan[0](i, c));
        cache.jac[1](i, c) = ct.scale * (hy * cache.raw(i, c) + h * cache.raw_tan[1](i, c));
      }
    }
  }
  if (!cache.out.allFinite()) throw EvalError("non-finite network output");
}

void nn_backward(const NetworkParams& params, const OutputTransform& transform,
                 const EvalCache& cache,
                 const Eigen::Ref<const Eigen::MatrixXd>& out_bar,
                 const std::array<Eigen::MatrixXd, 2>* jac_bar, ParamGrad& grad) {
  const auto& arch = params.arch;
  const Eigen::Index n = cache.inputs.cols();
  const int m = arch.output_width;
  const int layers = arch.layer_count();
  const bool with_jac = jac_bar != nullptr;
  if (with_jac && !cache.with_tangents) {
    throw std::logic_error("jacobian adjoints require a forward pass with tangents");
  }

  // Through the output transformation.
  Eigen::MatrixXd raw_bar(m, n);
  std::array<Eigen::MatrixXd, 2> tan_bar;
  if (with_jac) {
    tan_bar[0].resize(m, n);
    tan_bar[1].resize(m, n);
  }
  for (Eigen::Index c = 0; c < n; ++c) {
    for (int i = 0; i < m; ++i) {
      const auto& ct = transform.comps[static_cast<std::size_t>(i)];
      const double sh = ct.scale * cache.hval(i, c);
      double rb = out_bar(i, c) * sh;
      if (with_jac) {
        rb += (*jac_bar)[0](i, c) * ct.scale * cache.hdx(i, c) +
              (*jac_bar)[1](i, c) * ct.scale * cache.hdy(i, c);
        tan_bar[0](i, c) = (*jac_bar)[0](i, c) * sh;
        tan_bar[1](i, c) = (*jac_bar)[1](i, c) * sh;
      }
      raw_bar(i, c) = rb;
      if (ct.offset == OffsetRule::NegPressure &&
          transform.pressure_source == PressureSource::ExtraParam) {
        grad.extras[transform.pressure_extra] -= out_bar(i, c);
      }
    }
  }

  // Through the layer stack, including the tangent propagation trace.
  Eigen::MatrixXd act_bar = std::move(raw_bar);
  std::array<Eigen::MatrixXd, 2> u_bar;
  if (with_jac) u_bar = tan_bar;

  for (int l = layers - 1; l >= 0; --l) {
    const auto& w = params.weights[static_cast<std::size_t>(l)];
    auto& wg = grad.weights[static_cast<std::size_t>(l)];
    auto& bg = grad.biases[static_cast<std::size_t>(l)];
    const auto& a_prev = cache.act[static_cast<std::size_t>(l)];

    Eigen::MatrixXd s_bar;
    std::array<Eigen::MatrixXd, 2> v_bar;
    if (l == layers - 1) {
      // Identity output layer: pre-activation adjoint is the output adjoint.
      s_bar = std::move(act_bar);
      if (with_jac) {
        v_bar[0] = std::move(u_bar[0]);
        v_bar[1] = std::move(u_bar[1]);
      }
    } else {
      const auto& d = cache.dact[static_cast<std::size_t>(l)];
      const auto& a = cache.act[static_cast<std::size_t>(l) + 1];
      if (with_jac) {
        // u = d .* v with d = 1 - a^2: route tangent adjoints into v and,
        // via d, back into the activation.
        v_bar[0] = d.array() * u_bar[0].array();
        v_bar[1] = d.array() * u_bar[1].array();
        act_bar.array() += -2.0 * a.array() *
                           (u_bar[0].array() * cache.tan_pre[0][static_cast<std::size_t>(l)].array() +
                            u_bar[1].array() * cache.tan_pre[1][static_cast<std::size_t>(l)].array());
      }
      s_bar = d.array() * act_bar.array();
    }

    wg.noalias() += s_bar * a_prev.transpose();
    bg.noalias() += s_bar.rowwise().sum();
    if (with_jac) {
      wg.noalias() += v_bar[0] * cache.tan[0][static_cast<std::size_t>(l)].transpose();
      wg.noalias() += v_bar[1] * cache.tan[1][static_cast<std::size_t>(l)].transpose();
    }
    if (l > 0) {
      act_bar.noalias() = w.transpose() * s_bar;
      if (with_jac) {
        u_bar[0].noalias() = w.transpose() * v_bar[0];
        u_bar[1].noalias() = w.transpose() * v_bar[1];
      }
    }
  }
}

Eigen::VectorXd forward(const NetworkParams& params, const OutputTransform& transform,
                        const Eigen::Ref<const Eigen::VectorXd>& x) {
  EvalCache cache;
  nn_forward(params, transform, x, false, cache);
  return cache.out.col(0);
}

Eigen::MatrixXd input_jacobian(const NetworkParams& params,
                               const OutputTransform& transform,
                               const Eigen::Ref<const Eigen::VectorXd>& x) {
  EvalCache cache;
  nn_forward(params, transform, x, true, cache);
  Eigen::MatrixXd jac(params.arch.output_width, 2);
  jac.col(0) = cache.jac[0].col(0);
  jac.col(1) = cache.jac[1].col(0);
  return jac;
}

}  // namespace pinnc
