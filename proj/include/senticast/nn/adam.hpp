#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "senticast/nn/network.hpp"

namespace senticast::nn {

template <typename Scalar>
struct AdamState {
  Scalar lr = Scalar(0.001);
  Scalar beta1 = Scalar(0.9);
  Scalar beta2 = Scalar(0.999);
  Scalar epsilon = Scalar(1e-8);
  std::uint64_t step = 0;
  BasicNetwork<Scalar> first_moment;
  BasicNetwork<Scalar> second_moment;

  static AdamState for_model(const BasicNetwork<Scalar>& model, Scalar lr) {
    if (!(lr > Scalar(0))) throw std::invalid_argument("Adam learning rate must be positive");
    AdamState s;
    s.lr = lr;
    s.first_moment = model.zeros_like();
    s.second_moment = model.zeros_like();
    return s;
  }
};

/// One bias-corrected Adam update of `params` in place.
template <typename Scalar>
void adam_step(BasicNetwork<Scalar>& params, const BasicNetwork<Scalar>& grads,
               AdamState<Scalar>& state) {
  if (!(state.beta1 >= 0 && state.beta1 < 1 && state.beta2 >= 0 && state.beta2 < 1)) {
    throw std::invalid_argument("Adam betas must lie in [0, 1)");
  }
  ++state.step;
  const auto t = static_cast<Scalar>(state.step);
  const Scalar correction1 = Scalar(1) - std::pow(state.beta1, t);
  const Scalar correction2 = Scalar(1) - std::pow(state.beta2, t);
  const Scalar b1 = state.beta1, b2 = state.beta2, lr = state.lr, eps = state.epsilon;
  zip_parameters(
      [&](auto& p, const auto& g, auto& m, auto& v) {
        m = b1 * m + (Scalar(1) - b1) * g;
        v = b2 * v + (Scalar(1) - b2) * g.cwiseAbs2();
        p.array() -= lr * (m.array() / correction1) /
                     ((v.array() / correction2).sqrt() + eps);
      },
      params, grads, state.first_moment, state.second_moment);
}

/// Rescales `grads` so that their global L2 norm is at most `max_norm`.
template <typename Scalar>
void clip_by_global_norm(BasicNetwork<Scalar>& grads, Scalar max_norm) {
  Scalar sq(0);
  zip_parameters([&](const auto& g) { sq += g.squaredNorm(); }, grads);
  const Scalar norm = std::sqrt(sq);
  if (norm <= max_norm || norm == Scalar(0)) return;
  const Scalar scale = max_norm / norm;
  zip_parameters([&](auto& g) { g *= scale; }, grads);
}

}  // namespace senticast::nn
