#include <gtest/gtest.h>

#include <array>

#include "senticast/nn/network.hpp"
#include "test_support.hpp"

namespace senticast::nn {
namespace {

using testing::random_sequence;
using testing::worst_gradient_error;

TEST(Architecture, MakeArchitectureSetsReturnSequences) {
  const std::array units{50, 30, 20};
  const auto layers = make_architecture(LayerKind::lstm, units);
  ASSERT_EQ(layers.size(), 4u);
  EXPECT_TRUE(layers[0].return_sequences);
  EXPECT_TRUE(layers[1].return_sequences);
  EXPECT_FALSE(layers[2].return_sequences);
  EXPECT_EQ(layers[3], LayerSpec::dense(1));
}

TEST(Architecture, RejectsMalformedStacks) {
  EXPECT_THROW(validate_architecture(std::vector{LayerSpec::dense(1)}), ShapeError);
  EXPECT_THROW(validate_architecture(std::vector{LayerSpec::lstm(4), LayerSpec::dense(2)}),
               ShapeError);
  EXPECT_THROW(validate_architecture(std::vector{LayerSpec::lstm(4, true), LayerSpec::dense(1)}),
               ShapeError);
  EXPECT_THROW(validate_architecture(
                   std::vector{LayerSpec::lstm(4), LayerSpec::lstm(2), LayerSpec::dense(1)}),
               ShapeError);
  EXPECT_THROW(parse_layer_kind("gru"), std::invalid_argument);
}

TEST(Network, ZeroWeightsPredictHeadBias) {
  auto net = Network::zeros(std::vector{LayerSpec::lstm(3), LayerSpec::dense(1)}, 1);
  net.head.bias(0) = 0.37;
  std::mt19937_64 gen(1);
  const auto seq = random_sequence(gen, 6, 1, 5);
  const auto pred = network_forward(net, seq).predictions;
  for (Eigen::Index b = 0; b < 5; ++b) EXPECT_DOUBLE_EQ(pred(0, b), 0.37);
}

TEST(Network, SingleUnitLstmWithDenseHeadMatchesHandCalculation) {
  auto net = Network::zeros(std::vector{LayerSpec::lstm(1), LayerSpec::dense(1)}, 1);
  auto& cell = net.recurrent[0].forward;
  cell.input_weights[kForget](0, 0) = 0.5;
  cell.input_weights[kInput](0, 0) = -0.3;
  cell.input_weights[kCandidate](0, 0) = 0.8;
  cell.input_weights[kOutput](0, 0) = 0.2;
  cell.recurrent_weights[kForget](0, 0) = 0.1;
  cell.recurrent_weights[kInput](0, 0) = 0.4;
  cell.recurrent_weights[kCandidate](0, 0) = -0.6;
  cell.recurrent_weights[kOutput](0, 0) = 0.3;
  cell.biases[kForget](0) = 1.0;
  net.head.weights(0, 0) = 2.0;
  net.head.bias(0) = -0.5;

  auto sig = [](double z) { return 1.0 / (1.0 + std::exp(-z)); };
  double h = 0.0, c = 0.0;
  for (double x : {0.4, -0.2}) {
    const double f = sig(0.5 * x + 0.1 * h + 1.0);
    const double i = sig(-0.3 * x + 0.4 * h);
    const double g = std::tanh(0.8 * x - 0.6 * h);
    const double o = sig(0.2 * x + 0.3 * h);
    c = f * c + i * g;
    h = o * std::tanh(c);
  }
  const std::vector<double> window{0.4, -0.2};
  EXPECT_NEAR(predict_one(net, window), 2.0 * h - 0.5, 1e-14);
}

TEST(Network, FullSizeStacksProduceOneOutputPerWindow) {
  for (auto kind : {LayerKind::lstm, LayerKind::bilstm}) {
    const std::array units{50, 30, 20};
    const auto net = Network::initialized(make_architecture(kind, units), 1, 42);
    std::mt19937_64 gen(2);
    const auto seq = random_sequence(gen, 11, 1, 3);
    const auto pred = network_forward(net, seq).predictions;
    EXPECT_EQ(pred.rows(), 1);
    EXPECT_EQ(pred.cols(), 3);
    EXPECT_TRUE(pred.allFinite());
  }
}

TEST(Network, InitializationIsSeeded) {
  const std::array units{4, 3};
  const auto layers = make_architecture(LayerKind::bilstm, units);
  const auto a = Network::initialized(layers, 1, 7);
  const auto b = Network::initialized(layers, 1, 7);
  const auto c = Network::initialized(layers, 1, 8);
  bool all_equal = true, any_diff = false;
  zip_parameters(
      [&](const auto& x, const auto& y, const auto& z) {
        all_equal = all_equal && x == y;
        any_diff = any_diff || x != z;
      },
      a, b, c);
  EXPECT_TRUE(all_equal);
  EXPECT_TRUE(any_diff);
  EXPECT_TRUE(a.recurrent[0].forward.biases[kForget].isOnes());
  EXPECT_TRUE(a.recurrent[1].backward.biases[kInput].isZero());
}

TEST(Network, GlorotBoundHolds) {
  const std::array units{6};
  const auto net = Network::initialized(make_architecture(LayerKind::lstm, units), 2, 3);
  const double input_limit = std::sqrt(6.0 / (2 + 6));
  const double rec_limit = std::sqrt(6.0 / (6 + 6));
  for (std::size_t k = 0; k < kGateCount; ++k) {
    EXPECT_LE(net.recurrent[0].forward.input_weights[k].cwiseAbs().maxCoeff(), input_limit);
    EXPECT_LE(net.recurrent[0].forward.recurrent_weights[k].cwiseAbs().maxCoeff(), rec_limit);
  }
}

TEST(Network, ParameterCountMatchesFormula) {
  const std::array units{5, 3};
  const auto lstm = Network::zeros(make_architecture(LayerKind::lstm, units), 1);
  auto cell = [](int in, int u) { return 4 * (in * u + u * u + u); };
  EXPECT_EQ(lstm.parameter_count(), cell(1, 5) + cell(5, 3) + 3 + 1);
  const auto bi = Network::zeros(make_architecture(LayerKind::bilstm, units), 1);
  EXPECT_EQ(bi.parameter_count(), 2 * cell(1, 5) + 2 * cell(10, 3) + 6 + 1);
}

class GradientCheck : public ::testing::TestWithParam<LayerKind> {};

TEST_P(GradientCheck, AnalyticMatchesFiniteDifferences) {
  const std::array units{3, 2};
  std::mt19937_64 gen(99);
  auto net = Network::initialized(make_architecture(GetParam(), units), 2, 5);
  testing::jitter(net, gen, 0.3);
  const auto input = random_sequence(gen, 4, 2, 3);
  Matrix<double> targets(1, 3);
  targets << 0.3, -0.4, 0.9;
  const auto lg = loss_gradients(net, input, targets);
  EXPECT_NEAR(lg.loss, testing::batch_loss(net, input, targets), 1e-15);
  EXPECT_LT(worst_gradient_error(net, lg.grads, input, targets), 1e-5);
}

INSTANTIATE_TEST_SUITE_P(Kinds, GradientCheck,
                         ::testing::Values(LayerKind::lstm, LayerKind::bilstm));

TEST(Gradients, ZeroErrorGivesZeroGradients) {
  const std::array units{3};
  auto net = Network::initialized(make_architecture(LayerKind::bilstm, units), 1, 1);
  std::mt19937_64 gen(4);
  const auto input = random_sequence(gen, 5, 1, 4);
  const Matrix<double> targets = network_forward(net, input).predictions;
  const auto lg = loss_gradients(net, input, targets);
  EXPECT_EQ(lg.loss, 0.0);
  zip_parameters([](const auto& g) { EXPECT_TRUE(g.isZero(0.0)); }, lg.grads);
}

TEST(Gradients, DuplicatedBatchKeepsMeanGradient) {
  const std::array units{3, 2};
  auto net = Network::initialized(make_architecture(LayerKind::lstm, units), 1, 6);
  std::mt19937_64 gen(5);
  const auto input = random_sequence(gen, 4, 1, 2);
  Matrix<double> targets(1, 2);
  targets << 0.5, -0.1;
  Sequence<double> doubled;
  for (const auto& x : input) {
    Matrix<double> d(1, 4);
    d << x, x;
    doubled.push_back(d);
  }
  Matrix<double> doubled_targets(1, 4);
  doubled_targets << targets, targets;
  const auto a = loss_gradients(net, input, targets);
  const auto b = loss_gradients(net, doubled, doubled_targets);
  EXPECT_NEAR(a.loss, b.loss, 1e-14);
  zip_parameters([](const auto& x, const auto& y) { EXPECT_TRUE(x.isApprox(y, 1e-12)); },
                 a.grads, b.grads);
}

TEST(Gradients, StaleCacheIsRejected) {
  const std::array units{2};
  const auto small = Network::initialized(make_architecture(LayerKind::lstm, units), 1, 1);
  const std::array wide{2, 2};
  const auto deep = Network::initialized(make_architecture(LayerKind::lstm, wide), 1, 1);
  std::mt19937_64 gen(3);
  const auto fwd = network_forward(small, random_sequence(gen, 3, 1, 2));
  EXPECT_THROW(network_backward<double>(deep, fwd.cache, Matrix<double>::Zero(1, 2)), std::logic_error);
  EXPECT_THROW(network_backward<double>(small, NetworkCache<double>{}, Matrix<double>::Zero(1, 2)),
               std::logic_error);
}

TEST(Network, InputWidthMismatchThrows) {
  const std::array units{2};
  const auto net = Network::initialized(make_architecture(LayerKind::lstm, units), 1, 1);
  std::mt19937_64 gen(3);
  EXPECT_THROW(network_forward(net, random_sequence(gen, 3, 2, 1)), ShapeError);
  EXPECT_THROW(network_forward(net, Sequence<double>{}), ShapeError);
}

TEST(MseLoss, Examples) {
  const std::vector<double> p{1.0, 2.0, 3.0}, t{1.0, 2.0, 5.0};
  EXPECT_NEAR(mse_loss<double>(p, t), 4.0 / 3.0, 1e-15);
  EXPECT_EQ(mse_loss<double>(p, p), 0.0);
  const std::vector<double> shorter{1.0};
  EXPECT_THROW(mse_loss<double>(p, shorter), std::invalid_argument);
  EXPECT_THROW(mse_loss<double>(std::vector<double>{}, std::vector<double>{}),
               std::invalid_argument);
}

TEST(Network, PredictBatchMatchesPredictOne) {
  const std::array units{4, 2};
  const auto net = Network::initialized(make_architecture(LayerKind::bilstm, units), 1, 9);
  const std::vector<std::vector<double>> windows{{0.1, 0.2, 0.3}, {0.9, 0.5, 0.4}};
  const auto batch = predict_batch(net, windows);
  for (std::size_t i = 0; i < windows.size(); ++i) {
    EXPECT_NEAR(batch[i], predict_one(net, windows[i]), 1e-14);
  }
}

TEST(Network, PrecisionCastKeepsWeights) {
  const std::array units{3, 2};
  const auto net = Network::initialized(make_architecture(LayerKind::bilstm, units), 1, 2);
  const auto wide = net.cast<long double>();
  EXPECT_TRUE(wide.same_shape(net));
  const auto back = wide.cast<double>();
  zip_parameters([](const auto& a, const auto& b) { EXPECT_EQ(a, b); }, back, net);
  std::mt19937_64 gen(1);
  const auto seq = random_sequence(gen, 4, 1, 2);
  Sequence<long double> wide_seq;
  for (const auto& x : seq) wide_seq.push_back(x.cast<long double>());
  const auto p = network_forward(net, seq).predictions;
  const auto q = network_forward(wide, wide_seq).predictions;
  for (Eigen::Index b = 0; b < 2; ++b) EXPECT_NEAR(p(0, b), static_cast<double>(q(0, b)), 1e-14);
}

}  // namespace
}  // namespace senticast::nn
