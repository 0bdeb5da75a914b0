#pragma once

#include <cmath>
#include <concepts>

#include <Eigen/Core>

namespace senticast::nn {

template <std::floating_point Scalar>
Scalar sigmoid(Scalar z) {
  // Split by sign so exp() never overflows.
  if (z >= Scalar(0)) return Scalar(1) / (Scalar(1) + std::exp(-z));
  const Scalar e = std::exp(z);
  return e / (Scalar(1) + e);
}

template <std::floating_point Scalar>
Scalar tanh_act(Scalar z) {
  return std::tanh(z);
}

/// Elementwise logistic function over an Eigen expression.
template <typename Derived>
auto sigmoid(const Eigen::MatrixBase<Derived>& z) {
  using Scalar = typename Derived::Scalar;
  return z.unaryExpr([](Scalar v) { return sigmoid(v); });
}

template <typename Derived>
auto tanh_act(const Eigen::MatrixBase<Derived>& z) {
  return z.array().tanh().matrix();
}

}  // namespace senticast::nn
