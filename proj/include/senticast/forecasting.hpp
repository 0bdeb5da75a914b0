#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "senticast/nn/network.hpp"
#include "senticast/nn/train.hpp"
#include "senticast/sentiment.hpp"
#include "senticast/sequence.hpp"
#include "senticast/timeseries.hpp"

namespace senticast {

enum class Regime { intraday, one_day_ahead, future_mdt, future_vet };

std::string_view to_string(Regime regime);
Regime parse_regime(std::string_view text);
bool is_future(Regime regime);

struct RegimeConfig {
  Regime regime = Regime::intraday;
  std::size_t n = 10;
  double lr = 0.02;
  int epochs = 100;
  std::size_t m = 30;  // forecast horizon, future regimes only
  SentimentMode sentiment_train = SentimentMode::current;
  SentimentMode sentiment_test = SentimentMode::current;
  std::vector<nn::LayerSpec> arch;
  std::uint64_t seed = 42;
  double outer_frac = 0.85;
  double inner_frac = 0.85;
  std::optional<double> clip_norm;

  /// Throws DataError when fields are out of range or mutually inconsistent.
  void validate() const;
};

/// Regime defaults: n=10, lr=0.02, 100 epochs, m=30 and the regime's
/// sentiment placement. `previous_in_all_phases` selects the one-day-ahead
/// variant that also trains and validates on previous-day sentiment.
RegimeConfig default_regime_config(Regime regime, std::vector<nn::LayerSpec> arch,
                                   bool use_sentiment, bool previous_in_all_phases = false);

struct ForecastResult {
  std::vector<double> predicted;  // currency units
  std::vector<double> actual;
  std::vector<Date> dates;
  nn::TrainHistory history;
};

/// Everything a regime needs after splitting, normalising and windowing.
/// Series held here are normalised with the subtrain (or train) fit.
struct PreparedRegime {
  RegimeConfig config;
  NormalizationParams normalizer;
  WindowedDataset train;
  std::optional<WindowedDataset> validation;  // intraday / one-day-ahead
  std::optional<WindowedDataset> test;        // intraday / one-day-ahead

  // Future regimes: rollout seeds and the currency-unit days they forecast.
  std::vector<double> validation_seed;    // VET: subtrain
  std::vector<double> validation_actual;  // VET: the m validation closes
  std::vector<double> forecast_seed;      // MDT: train, VET: subtrain + validation

  std::vector<double> test_actual;
  std::vector<Date> test_dates;
};

PreparedRegime prepare_regime(const AlignedSeries& data, const RegimeConfig& config);

/// Trains a freshly initialised network (seeded from the config) with the
/// regime's validation hook, returning the retained weights.
nn::TrainResult train_regime(const PreparedRegime& prepared);

/// Produces denormalised predictions for the test days with `model`.
ForecastResult predict_regime(const PreparedRegime& prepared, const nn::Network& model,
                              nn::TrainHistory history = {});

ForecastResult run_regime(const AlignedSeries& data, const RegimeConfig& config);

ForecastResult run_intraday(const AlignedSeries& data, RegimeConfig config);
ForecastResult run_one_day_ahead(const AlignedSeries& data, RegimeConfig config);
ForecastResult run_future_mdt(const AlignedSeries& data, RegimeConfig config);
ForecastResult run_future_vet(const AlignedSeries& data, RegimeConfig config);

/// Maps a window of normalised values to the next normalised value.
using WindowModel = std::function<double(std::span<const double>)>;

/// Autoregressive rollout: starts from the last n seed values, feeds each
/// prediction back in place of the oldest value. When `sentiment_slot` is
/// set, that value is appended to every window passed to the model.
std::vector<double> pred_next_m_days(const WindowModel& model, std::span<const double> seed,
                                     std::size_t n, std::size_t m,
                                     std::optional<double> sentiment_slot = std::nullopt);
std::vector<double> pred_next_m_days(const nn::Network& model, std::span<const double> seed,
                                     std::size_t n, std::size_t m,
                                     std::optional<double> sentiment_slot = std::nullopt);

nlohmann::json to_json(const RegimeConfig& config);
RegimeConfig regime_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const nn::TrainHistory& history);
nn::TrainHistory history_from_json(const nlohmann::json& j);

/// JSON with dates, actuals, predictions, config echo and training history.
nlohmann::json forecast_to_json(const ForecastResult& result, const RegimeConfig& config);
ForecastResult forecast_from_json(const nlohmann::json& j);

}  // namespace senticast
