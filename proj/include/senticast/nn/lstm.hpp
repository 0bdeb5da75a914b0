#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "senticast/nn/activations.hpp"

namespace senticast::nn {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// A sequence of T inputs, each stored as a (features x batch) matrix.
template <typename Scalar>
using Sequence = std::vector<Matrix<Scalar>>;

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum Gate : std::size_t { kForget = 0, kInput = 1, kCandidate = 2, kOutput = 3 };
inline constexpr std::size_t kGateCount = 4;

/// Weights of one LSTM direction. Pre-activations are
///   z_k = input_weights[k]^T x + recurrent_weights[k]^T h + biases[k]
/// so input weights are (input_dim x units) and recurrent (units x units).
template <typename Scalar>
struct LstmCellParams {
  std::array<Matrix<Scalar>, kGateCount> input_weights;
  std::array<Matrix<Scalar>, kGateCount> recurrent_weights;
  std::array<Vector<Scalar>, kGateCount> biases;

  static LstmCellParams zeros(Eigen::Index input_dim, Eigen::Index units) {
    LstmCellParams p;
    for (std::size_t k = 0; k < kGateCount; ++k) {
      p.input_weights[k] = Matrix<Scalar>::Zero(input_dim, units);
      p.recurrent_weights[k] = Matrix<Scalar>::Zero(units, units);
      p.biases[k] = Vector<Scalar>::Zero(units);
    }
    return p;
  }

  Eigen::Index input_dim() const { return input_weights[0].rows(); }
  Eigen::Index units() const { return input_weights[0].cols(); }

  void check() const {
    const auto in = input_dim();
    const auto u = units();
    for (std::size_t k = 0; k < kGateCount; ++k) {
      if (input_weights[k].rows() != in || input_weights[k].cols() != u ||
          recurrent_weights[k].rows() != u || recurrent_weights[k].cols() != u ||
          biases[k].size() != u) {
        throw ShapeError("LSTM gate parameters have inconsistent shapes");
      }
    }
  }
};

/// Applies `f` to corresponding tensors of one or more parameter sets.
template <typename F, typename... Params>
void zip_tensors(F&& f, Params&... params) {
  for (std::size_t k = 0; k < kGateCount; ++k) f(params.input_weights[k]...);
  for (std::size_t k = 0; k < kGateCount; ++k) f(params.recurrent_weights[k]...);
  for (std::size_t k = 0; k < kGateCount; ++k) f(params.biases[k]...);
}

template <typename Scalar>
struct CellState {
  Matrix<Scalar> h;  // units x batch
  Matrix<Scalar> c;  // units x batch

  static CellState zeros(Eigen::Index units, Eigen::Index batch) {
    return {Matrix<Scalar>::Zero(units, batch), Matrix<Scalar>::Zero(units, batch)};
  }
};

/// Activations of one step kept for the backward pass.
template <typename Scalar>
struct StepCache {
  Matrix<Scalar> x;
  Matrix<Scalar> h_prev;
  Matrix<Scalar> c_prev;
  std::array<Matrix<Scalar>, kGateCount> gates;  // f, i, candidate, o
  Matrix<Scalar> c;
  Matrix<Scalar> tanh_c;
};

template <typename Scalar>
struct CellForward {
  CellState<Scalar> next;
  StepCache<Scalar> cache;
};

template <typename Scalar>
CellForward<Scalar> lstm_cell_forward(const Matrix<Scalar>& x,
                                      const CellState<Scalar>& prev,
                                      const LstmCellParams<Scalar>& params) {
  const auto units = params.units();
  if (x.rows() != params.input_dim() || prev.h.rows() != units ||
      prev.c.rows() != units || prev.h.cols() != x.cols() ||
      prev.c.cols() != x.cols()) {
    throw ShapeError("lstm_cell_forward: dimension mismatch");
  }
  CellForward<Scalar> out;
  auto& cache = out.cache;
  cache.x = x;
  cache.h_prev = prev.h;
  cache.c_prev = prev.c;
  for (std::size_t k = 0; k < kGateCount; ++k) {
    Matrix<Scalar> z = params.biases[k].replicate(1, x.cols());
    z.noalias() += params.input_weights[k].transpose() * x;
    z.noalias() += params.recurrent_weights[k].transpose() * prev.h;
    cache.gates[k] = k == kCandidate ? Matrix<Scalar>(tanh_act(z))
                                     : Matrix<Scalar>(sigmoid(z));
  }
  cache.c = cache.gates[kForget].cwiseProduct(prev.c) +
            cache.gates[kInput].cwiseProduct(cache.gates[kCandidate]);
  cache.tanh_c = tanh_act(cache.c);
  out.next.c = cache.c;
  out.next.h = cache.gates[kOutput].cwiseProduct(cache.tanh_c);
  return out;
}

/// Gradients flowing out of one backward step.
template <typename Scalar>
struct CellBackward {
  Matrix<Scalar> dx;
  Matrix<Scalar> dh_prev;
  Matrix<Scalar> dc_prev;
};

/// Backpropagates through one step given dL/dh_t and dL/dC_t (from the
/// future), accumulating parameter gradients into `grads`.
template <typename Scalar>
CellBackward<Scalar> lstm_cell_backward(const StepCache<Scalar>& cache,
                                        const LstmCellParams<Scalar>& params,
                                        const Matrix<Scalar>& dh,
                                        const Matrix<Scalar>& dc_next,
                                        LstmCellParams<Scalar>& grads) {
  const auto& f = cache.gates[kForget];
  const auto& i = cache.gates[kInput];
  const auto& g = cache.gates[kCandidate];
  const auto& o = cache.gates[kOutput];

  const Matrix<Scalar> dc =
      dc_next + dh.cwiseProduct(o).cwiseProduct(
                    (Scalar(1) - cache.tanh_c.array().square()).matrix());

  std::array<Matrix<Scalar>, kGateCount> dz;
  dz[kForget] = dc.cwiseProduct(cache.c_prev).cwiseProduct(
      f.cwiseProduct((Scalar(1) - f.array()).matrix()));
  dz[kInput] = dc.cwiseProduct(g).cwiseProduct(
      i.cwiseProduct((Scalar(1) - i.array()).matrix()));
  dz[kCandidate] = dc.cwiseProduct(i).cwiseProduct(
      (Scalar(1) - g.array().square()).matrix());
  dz[kOutput] = dh.cwiseProduct(cache.tanh_c)
                    .cwiseProduct(o.cwiseProduct((Scalar(1) - o.array()).matrix()));

  CellBackward<Scalar> out;
  out.dx = Matrix<Scalar>::Zero(cache.x.rows(), cache.x.cols());
  out.dh_prev = Matrix<Scalar>::Zero(cache.h_prev.rows(), cache.h_prev.cols());
  out.dc_prev = dc.cwiseProduct(f);
  for (std::size_t k = 0; k < kGateCount; ++k) {
    grads.input_weights[k].noalias() += cache.x * dz[k].transpose();
    grads.recurrent_weights[k].noalias() += cache.h_prev * dz[k].transpose();
    grads.biases[k] += dz[k].rowwise().sum();
    out.dx.noalias() += params.input_weights[k] * dz[k];
    out.dh_prev.noalias() += params.recurrent_weights[k] * dz[k];
  }
  return out;
}

template <typename Scalar>
struct LstmLayerCache {
  std::vector<StepCache<Scalar>> steps;
};

template <typename Scalar>
struct LayerForward {
  /// All T hidden states, or only the last when return_sequences is false.
  Sequence<Scalar> outputs;
  LstmLayerCache<Scalar> cache;
};

/// Runs the cell over `sequence` from zero initial state.
template <typename Scalar>
LayerForward<Scalar> lstm_layer_forward(std::span<const Matrix<Scalar>> sequence,
                                        const LstmCellParams<Scalar>& params,
                                        bool return_sequences) {
  if (sequence.empty()) throw ShapeError("lstm_layer_forward: empty sequence");
  LayerForward<Scalar> out;
  auto state = CellState<Scalar>::zeros(params.units(), sequence.front().cols());
  out.cache.steps.reserve(sequence.size());
  for (const auto& x : sequence) {
    auto step = lstm_cell_forward(x, state, params);
    state = std::move(step.next);
    if (return_sequences) out.outputs.push_back(state.h);
    out.cache.steps.push_back(std::move(step.cache));
  }
  if (!return_sequences) out.outputs.push_back(std::move(state.h));
  return out;
}

/// BPTT over a whole layer. `d_hidden` holds dL/dh_t for every step (zero
/// where the step fed nothing downstream). Returns dL/dx_t per step.
template <typename Scalar>
Sequence<Scalar> lstm_layer_backward(const LstmLayerCache<Scalar>& cache,
                                     const LstmCellParams<Scalar>& params,
                                     std::span<const Matrix<Scalar>> d_hidden,
                                     LstmCellParams<Scalar>& grads) {
  const std::size_t steps = cache.steps.size();
  if (steps == 0 || d_hidden.size() != steps) {
    throw std::logic_error("lstm_layer_backward: cache does not match gradients");
  }
  Sequence<Scalar> dx(steps);
  const auto& last = cache.steps.back();
  Matrix<Scalar> dh_next = Matrix<Scalar>::Zero(last.c.rows(), last.c.cols());
  Matrix<Scalar> dc_next = dh_next;
  for (std::size_t t = steps; t-- > 0;) {
    const Matrix<Scalar> dh = d_hidden[t] + dh_next;
    auto back = lstm_cell_backward(cache.steps[t], params, dh, dc_next, grads);
    dx[t] = std::move(back.dx);
    dh_next = std::move(back.dh_prev);
    dc_next = std::move(back.dc_prev);
  }
  return dx;
}

}  // namespace senticast::nn
