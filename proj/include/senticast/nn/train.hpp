#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "senticast/nn/adam.hpp"
#include "senticast/sequence.hpp"

namespace senticast::nn {

/// Raised when the training loss or validation metric becomes non-finite.
class TrainingDiverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrainOptions {
  int epochs = 100;
  double lr = 0.02;
  /// Clip the global gradient norm before each update; off by default.
  std::optional<double> clip_norm;
};

struct TrainHistory {
  std::vector<double> train_loss;  // loss of the epoch's forward pass
  std::vector<double> val_metric;  // empty when no hook is supplied
  int best_epoch = 0;              // 1-based
};

/// Called after every epoch with the freshly updated weights; lower is better.
using ValidationHook = std::function<double(const Network&)>;

struct TrainResult {
  TrainHistory history;
  Network model;  // weights of best_epoch
};

/// Full-batch Adam on MSE. With a hook, the weights that minimise the hook's
/// metric are returned (earliest epoch wins ties); without, the final ones.
inline TrainResult train(Network model, const WindowedDataset& data,
                         const TrainOptions& options, const ValidationHook& hook = {}) {
  if (data.empty()) throw std::invalid_argument("train: empty training set");
  if (options.epochs < 1) throw std::invalid_argument("train: epochs must be >= 1");

  const auto input = to_sequence<double>(data.inputs);
  Matrix<double> targets(1, static_cast<Eigen::Index>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i) {
    targets(0, static_cast<Eigen::Index>(i)) = data.targets[i];
  }

  auto adam = AdamState<double>::for_model(model, options.lr);
  TrainResult result;
  double best_metric = std::numeric_limits<double>::infinity();
  for (int epoch = 1; epoch <= options.epochs; ++epoch) {
    auto step = loss_gradients(model, input, targets);
    if (!std::isfinite(step.loss)) {
      throw TrainingDiverged("training loss became non-finite at epoch " +
                             std::to_string(epoch) + " (lr " + std::to_string(options.lr) +
                             "); consider a lower learning rate or clip_norm");
    }
    result.history.train_loss.push_back(step.loss);
    if (options.clip_norm) clip_by_global_norm(step.grads, *options.clip_norm);
    adam_step(model, step.grads, adam);

    if (hook) {
      const double metric = hook(model);
      if (!std::isfinite(metric)) {
        throw TrainingDiverged("validation metric became non-finite at epoch " +
                               std::to_string(epoch));
      }
      result.history.val_metric.push_back(metric);
      if (metric < best_metric) {
        best_metric = metric;
        result.history.best_epoch = epoch;
        result.model = model;
      }
    }
  }
  if (!hook) {
    result.history.best_epoch = options.epochs;
    result.model = std::move(model);
  }
  return result;
}

}  // namespace senticast::nn
