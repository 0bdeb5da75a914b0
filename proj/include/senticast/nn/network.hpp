#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "senticast/nn/bilstm.hpp"

namespace senticast::nn {

enum class LayerKind { lstm, bilstm, dense };
enum class Activation { tanh, linear };

struct LayerSpec {
  LayerKind kind = LayerKind::lstm;
  int units = 1;
  Activation activation = Activation::tanh;
  bool return_sequences = false;

  static LayerSpec lstm(int units, bool return_sequences = false) {
    return {LayerKind::lstm, units, Activation::tanh, return_sequences};
  }
  static LayerSpec bilstm(int units, bool return_sequences = false) {
    return {LayerKind::bilstm, units, Activation::tanh, return_sequences};
  }
  static LayerSpec dense(int units = 1) {
    return {LayerKind::dense, units, Activation::linear, false};
  }

  bool recurrent() const { return kind != LayerKind::dense; }
  /// Width of this layer's output per step.
  int output_width() const { return kind == LayerKind::bilstm ? 2 * units : units; }

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

inline std::string_view to_string(LayerKind kind) {
  switch (kind) {
    case LayerKind::lstm: return "lstm";
    case LayerKind::bilstm: return "bilstm";
    case LayerKind::dense: return "dense";
  }
  return "?";
}

inline LayerKind parse_layer_kind(std::string_view text) {
  if (text == "lstm") return LayerKind::lstm;
  if (text == "bilstm") return LayerKind::bilstm;
  if (text == "dense") return LayerKind::dense;
  throw std::invalid_argument("unknown layer kind '" + std::string(text) + "'");
}

/// Throws ShapeError unless the stack is: one or more recurrent (tanh)
/// layers where all but the top return sequences, then one linear dense
/// layer with a single output.
inline void validate_architecture(std::span<const LayerSpec> layers) {
  if (layers.size() < 2) throw ShapeError("architecture needs recurrent layers and a dense head");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& spec = layers[l];
    if (spec.units < 1) throw ShapeError("layer units must be positive");
    const bool last = l + 1 == layers.size();
    if (last) {
      if (spec.kind != LayerKind::dense || spec.units != 1 ||
          spec.activation != Activation::linear) {
        throw ShapeError("final layer must be a linear dense layer with 1 output");
      }
      continue;
    }
    if (!spec.recurrent()) throw ShapeError("dense layers are only supported as the head");
    if (spec.activation != Activation::tanh) {
      throw ShapeError("recurrent layers use tanh activation");
    }
    const bool top_recurrent = l + 2 == layers.size();
    if (spec.return_sequences == top_recurrent) {
      throw ShapeError("only recurrent layers below the top may return sequences");
    }
  }
}

/// Stacks recurrent layers of the given unit counts under a 1-output dense
/// head, setting return_sequences on all but the top recurrent layer.
inline std::vector<LayerSpec> make_architecture(LayerKind recurrent_kind,
                                                std::span<const int> units) {
  if (recurrent_kind == LayerKind::dense) {
    throw ShapeError("make_architecture: recurrent kind required");
  }
  std::vector<LayerSpec> layers;
  for (std::size_t l = 0; l < units.size(); ++l) {
    layers.push_back({recurrent_kind, units[l], Activation::tanh, l + 1 < units.size()});
  }
  layers.push_back(LayerSpec::dense(1));
  validate_architecture(layers);
  return layers;
}

template <typename Scalar>
struct RecurrentParams {
  LstmCellParams<Scalar> forward;
  LstmCellParams<Scalar> backward;  // unused (empty) for unidirectional layers
};

template <typename Scalar>
struct DenseParams {
  Matrix<Scalar> weights;  // input_width x outputs
  Vector<Scalar> bias;     // outputs
};

/// Layer specs plus all weights. Gradients and optimizer moments use the
/// same type so that every parameter tensor pairs up one-to-one.
template <typename Scalar>
struct BasicNetwork {
  std::vector<LayerSpec> layers;
  Eigen::Index input_dim = 1;
  std::uint64_t seed = 0;
  std::vector<RecurrentParams<Scalar>> recurrent;
  DenseParams<Scalar> head;

  static BasicNetwork zeros(std::vector<LayerSpec> layers, Eigen::Index input_dim) {
    validate_architecture(layers);
    if (input_dim < 1) throw ShapeError("input_dim must be positive");
    BasicNetwork net;
    net.input_dim = input_dim;
    Eigen::Index width = input_dim;
    for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
      RecurrentParams<Scalar> p;
      p.forward = LstmCellParams<Scalar>::zeros(width, layers[l].units);
      if (layers[l].kind == LayerKind::bilstm) {
        p.backward = LstmCellParams<Scalar>::zeros(width, layers[l].units);
      }
      net.recurrent.push_back(std::move(p));
      width = layers[l].output_width();
    }
    net.head.weights = Matrix<Scalar>::Zero(width, layers.back().units);
    net.head.bias = Vector<Scalar>::Zero(layers.back().units);
    net.layers = std::move(layers);
    return net;
  }

  /// Glorot-uniform weights from a generator seeded with `seed`; forget-gate
  /// biases start at 1, all other biases at 0.
  static BasicNetwork initialized(std::vector<LayerSpec> layers, Eigen::Index input_dim,
                                  std::uint64_t seed) {
    BasicNetwork net = zeros(std::move(layers), input_dim);
    net.seed = seed;
    std::mt19937_64 gen(seed);
    auto fill = [&gen](Matrix<Scalar>& m, double fan_in, double fan_out) {
      const double limit = std::sqrt(6.0 / (fan_in + fan_out));
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
          // 53 random bits -> [0, 1); avoids implementation-defined distributions.
          const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
          m(i, j) = static_cast<Scalar>((2.0 * u - 1.0) * limit);
        }
      }
    };
    auto init_cell = [&](LstmCellParams<Scalar>& cell) {
      const double in = static_cast<double>(cell.input_dim());
      const double units = static_cast<double>(cell.units());
      for (std::size_t k = 0; k < kGateCount; ++k) fill(cell.input_weights[k], in, units);
      for (std::size_t k = 0; k < kGateCount; ++k) fill(cell.recurrent_weights[k], units, units);
      cell.biases[kForget].setOnes();
    };
    for (std::size_t l = 0; l < net.recurrent.size(); ++l) {
      init_cell(net.recurrent[l].forward);
      if (net.layers[l].kind == LayerKind::bilstm) init_cell(net.recurrent[l].backward);
    }
    fill(net.head.weights, static_cast<double>(net.head.weights.rows()),
         static_cast<double>(net.head.weights.cols()));
    return net;
  }

  BasicNetwork zeros_like() const {
    BasicNetwork z = zeros(layers, input_dim);
    z.seed = seed;
    return z;
  }

  template <typename Other>
  bool same_shape(const BasicNetwork<Other>& other) const {
    return layers == other.layers && input_dim == other.input_dim;
  }

  /// Same architecture and weights at another precision.
  template <typename Target>
  BasicNetwork<Target> cast() const {
    auto out = BasicNetwork<Target>::zeros(layers, input_dim);
    out.seed = seed;
    zip_parameters([](auto& dst, const auto& src) { dst = src.template cast<Target>(); }, out,
                   *this);
    return out;
  }

  Eigen::Index parameter_count() const;
};

/// Applies `f` to corresponding parameter tensors of same-shaped networks,
/// in a fixed order (layer by layer, forward then backward direction, then
/// the dense head).
template <typename F, typename First, typename... Rest>
void zip_parameters(F&& f, First& first, Rest&... rest) {
  if (!(first.same_shape(rest) && ...)) {
    throw ShapeError("zip_parameters: networks differ in shape");
  }
  for (std::size_t l = 0; l < first.recurrent.size(); ++l) {
    zip_tensors(f, first.recurrent[l].forward, rest.recurrent[l].forward...);
    if (first.layers[l].kind == LayerKind::bilstm) {
      zip_tensors(f, first.recurrent[l].backward, rest.recurrent[l].backward...);
    }
  }
  f(first.head.weights, rest.head.weights...);
  f(first.head.bias, rest.head.bias...);
}

template <typename Scalar>
Eigen::Index BasicNetwork<Scalar>::parameter_count() const {
  Eigen::Index count = 0;
  zip_parameters([&](const auto& t) { count += t.size(); }, *this);
  return count;
}

template <typename Scalar>
struct NetworkCache {
  std::vector<BiLstmCache<Scalar>> layers;
  Matrix<Scalar> top_hidden;  // input to the dense head
  Eigen::Index batch = 0;
};

template <typename Scalar>
struct NetworkForward {
  Matrix<Scalar> predictions;  // outputs x batch
  NetworkCache<Scalar> cache;
};

template <typename Scalar>
NetworkForward<Scalar> network_forward(const BasicNetwork<Scalar>& net,
                                       const Sequence<Scalar>& input) {
  if (input.empty()) throw ShapeError("network_forward: empty input sequence");
  const auto batch = input.front().cols();
  for (const auto& x : input) {
    if (x.rows() != net.input_dim || x.cols() != batch) {
      throw ShapeError("network_forward: input width " + std::to_string(x.rows()) +
                       " does not match model input " + std::to_string(net.input_dim));
    }
  }
  NetworkForward<Scalar> out;
  out.cache.batch = batch;
  Sequence<Scalar> current = input;
  for (std::size_t l = 0; l < net.recurrent.size(); ++l) {
    const auto& spec = net.layers[l];
    const auto& params = net.recurrent[l];
    BiLstmCache<Scalar> cache;
    cache.return_sequences = spec.return_sequences;
    if (spec.kind == LayerKind::bilstm) {
      auto layer = bilstm_layer_forward<Scalar>(current, params.forward, params.backward,
                                                spec.return_sequences);
      current = std::move(layer.outputs);
      cache = std::move(layer.cache);
    } else {
      auto layer = lstm_layer_forward<Scalar>(current, params.forward, spec.return_sequences);
      current = std::move(layer.outputs);
      cache.forward = std::move(layer.cache);
    }
    out.cache.layers.push_back(std::move(cache));
  }
  out.cache.top_hidden = current.back();
  out.predictions = net.head.weights.transpose() * out.cache.top_hidden;
  out.predictions.colwise() += net.head.bias;
  return out;
}

/// Gradients of a loss with respect to every parameter, given dL/dprediction.
template <typename Scalar>
BasicNetwork<Scalar> network_backward(const BasicNetwork<Scalar>& net,
                                      const NetworkCache<Scalar>& cache,
                                      const Matrix<Scalar>& d_predictions) {
  if (cache.layers.size() != net.recurrent.size() || cache.batch == 0 ||
      d_predictions.cols() != cache.batch ||
      d_predictions.rows() != net.head.weights.cols()) {
    throw std::logic_error("network_backward: stale or missing forward cache");
  }
  BasicNetwork<Scalar> grads = net.zeros_like();
  grads.head.weights.noalias() = cache.top_hidden * d_predictions.transpose();
  grads.head.bias = d_predictions.rowwise().sum();

  Sequence<Scalar> d_current{net.head.weights * d_predictions};
  for (std::size_t l = net.recurrent.size(); l-- > 0;) {
    const auto& spec = net.layers[l];
    const auto& params = net.recurrent[l];
    auto& g = grads.recurrent[l];
    const auto& c = cache.layers[l];
    if (spec.kind == LayerKind::bilstm) {
      d_current = bilstm_layer_backward<Scalar>(c, params.forward, params.backward,
                                                d_current, g.forward, g.backward);
    } else {
      const std::size_t steps = c.forward.steps.size();
      if (!spec.return_sequences) {
        Sequence<Scalar> full(steps, Matrix<Scalar>::Zero(params.forward.units(), cache.batch));
        full.back() = d_current.front();
        d_current = std::move(full);
      }
      d_current = lstm_layer_backward<Scalar>(c.forward, params.forward, d_current, g.forward);
    }
  }
  return grads;
}

/// Mean squared error over equal-length, non-empty vectors.
template <typename Scalar>
Scalar mse_loss(std::span<const Scalar> pred, std::span<const Scalar> target) {
  if (pred.size() != target.size()) throw std::invalid_argument("mse_loss: length mismatch");
  if (pred.empty()) throw std::invalid_argument("mse_loss: empty input");
  Scalar sum(0);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const Scalar d = pred[i] - target[i];
    sum += d * d;
  }
  return sum / static_cast<Scalar>(pred.size());
}

template <typename Scalar>
struct LossAndGradients {
  Scalar loss;
  BasicNetwork<Scalar> grads;
};

/// Forward, MSE and full backpropagation through time for one batch.
/// `targets` is (1 x batch).
template <typename Scalar>
LossAndGradients<Scalar> loss_gradients(const BasicNetwork<Scalar>& net,
                                        const Sequence<Scalar>& input,
                                        const Matrix<Scalar>& targets) {
  auto fwd = network_forward(net, input);
  if (targets.rows() != fwd.predictions.rows() || targets.cols() != fwd.predictions.cols()) {
    throw ShapeError("loss_gradients: targets do not match batch");
  }
  const Matrix<Scalar> diff = fwd.predictions - targets;
  const Scalar count = static_cast<Scalar>(diff.size());
  const Scalar loss = diff.squaredNorm() / count;
  const Matrix<Scalar> d_pred = (Scalar(2) / count) * diff;
  return {loss, network_backward(net, fwd.cache, d_pred)};
}

/// Packs univariate windows (all the same length) into a step-major batch.
template <typename Scalar = double>
Sequence<Scalar> to_sequence(std::span<const std::vector<double>> windows) {
  if (windows.empty()) throw ShapeError("to_sequence: no windows");
  const std::size_t steps = windows.front().size();
  const auto batch = static_cast<Eigen::Index>(windows.size());
  Sequence<Scalar> seq(steps, Matrix<Scalar>(1, batch));
  for (Eigen::Index b = 0; b < batch; ++b) {
    const auto& w = windows[static_cast<std::size_t>(b)];
    if (w.size() != steps) throw ShapeError("to_sequence: ragged windows");
    for (std::size_t t = 0; t < steps; ++t) seq[t](0, b) = static_cast<Scalar>(w[t]);
  }
  return seq;
}

/// Prediction for one univariate window.
template <typename Scalar>
Scalar predict_one(const BasicNetwork<Scalar>& net, std::span<const double> window) {
  std::vector<double> copy(window.begin(), window.end());
  const auto seq = to_sequence<Scalar>(std::span<const std::vector<double>>(&copy, 1));
  return network_forward(net, seq).predictions(0, 0);
}

template <typename Scalar>
std::vector<double> predict_batch(const BasicNetwork<Scalar>& net,
                                  std::span<const std::vector<double>> windows) {
  if (windows.empty()) return {};
  const auto fwd = network_forward(net, to_sequence<Scalar>(windows));
  std::vector<double> out(static_cast<std::size_t>(fwd.predictions.cols()));
  for (Eigen::Index b = 0; b < fwd.predictions.cols(); ++b) {
    out[static_cast<std::size_t>(b)] = static_cast<double>(fwd.predictions(0, b));
  }
  return out;
}

using Network = BasicNetwork<double>;

}  // namespace senticast::nn
