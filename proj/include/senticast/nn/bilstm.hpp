#pragma once

#include <algorithm>

#include "senticast/nn/lstm.hpp"

namespace senticast::nn {

template <typename Scalar>
struct BiLstmCache {
  LstmLayerCache<Scalar> forward;
  LstmLayerCache<Scalar> backward;  // indexed in reversed time
  bool return_sequences = false;
};

template <typename Scalar>
struct BiLayerForward {
  Sequence<Scalar> outputs;  // each (2 * units) x batch
  BiLstmCache<Scalar> cache;
};

/// Forward direction over the sequence, backward direction over its reverse.
/// With return_sequences, step t holds [h_fwd(t); h_bwd(t)] with the backward
/// states re-reversed into input order. Otherwise the single output is the
/// final state of each direction, [h_fwd(T-1); h_bwd(0)].
template <typename Scalar>
BiLayerForward<Scalar> bilstm_layer_forward(std::span<const Matrix<Scalar>> sequence,
                                            const LstmCellParams<Scalar>& fwd_params,
                                            const LstmCellParams<Scalar>& bwd_params,
                                            bool return_sequences) {
  if (sequence.empty()) throw ShapeError("bilstm_layer_forward: empty sequence");
  if (fwd_params.units() != bwd_params.units() ||
      fwd_params.input_dim() != bwd_params.input_dim()) {
    throw ShapeError("bilstm_layer_forward: direction parameter shapes differ");
  }
  Sequence<Scalar> reversed(sequence.rbegin(), sequence.rend());
  auto fwd = lstm_layer_forward<Scalar>(sequence, fwd_params, return_sequences);
  auto bwd = lstm_layer_forward<Scalar>(reversed, bwd_params, return_sequences);

  const auto units = fwd_params.units();
  BiLayerForward<Scalar> out;
  const std::size_t count = fwd.outputs.size();
  out.outputs.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    const auto& hb = bwd.outputs[count - 1 - t];
    Matrix<Scalar> joined(2 * units, hb.cols());
    joined.topRows(units) = fwd.outputs[t];
    joined.bottomRows(units) = hb;
    out.outputs.push_back(std::move(joined));
  }
  out.cache.forward = std::move(fwd.cache);
  out.cache.backward = std::move(bwd.cache);
  out.cache.return_sequences = return_sequences;
  return out;
}

/// `d_outputs` matches the shape of the forward outputs (T entries or one).
template <typename Scalar>
Sequence<Scalar> bilstm_layer_backward(const BiLstmCache<Scalar>& cache,
                                       const LstmCellParams<Scalar>& fwd_params,
                                       const LstmCellParams<Scalar>& bwd_params,
                                       std::span<const Matrix<Scalar>> d_outputs,
                                       LstmCellParams<Scalar>& fwd_grads,
                                       LstmCellParams<Scalar>& bwd_grads) {
  const std::size_t steps = cache.forward.steps.size();
  const std::size_t expected = cache.return_sequences ? steps : 1;
  if (steps == 0 || d_outputs.size() != expected) {
    throw std::logic_error("bilstm_layer_backward: cache does not match gradients");
  }
  const auto units = fwd_params.units();
  const auto batch = d_outputs.front().cols();
  Sequence<Scalar> d_fwd(steps, Matrix<Scalar>::Zero(units, batch));
  Sequence<Scalar> d_bwd(steps, Matrix<Scalar>::Zero(units, batch));
  if (cache.return_sequences) {
    for (std::size_t t = 0; t < steps; ++t) {
      d_fwd[t] = d_outputs[t].topRows(units);
      d_bwd[steps - 1 - t] = d_outputs[t].bottomRows(units);
    }
  } else {
    d_fwd[steps - 1] = d_outputs[0].topRows(units);
    d_bwd[steps - 1] = d_outputs[0].bottomRows(units);
  }
  auto dx = lstm_layer_backward<Scalar>(cache.forward, fwd_params, d_fwd, fwd_grads);
  auto dx_rev = lstm_layer_backward<Scalar>(cache.backward, bwd_params, d_bwd, bwd_grads);
  for (std::size_t t = 0; t < steps; ++t) dx[t] += dx_rev[steps - 1 - t];
  return dx;
}

}  // namespace senticast::nn
