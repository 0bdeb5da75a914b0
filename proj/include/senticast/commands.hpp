#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <vector>

#include "senticast/config.hpp"
#include "senticast/report.hpp"

namespace senticast {

/// Loads prices (and sentiment when the config uses it) and aligns them.
/// Load diagnostics are written to `log`.
AlignedSeries load_run_data(const RunConfig& config, std::ostream& log);

struct TrainOutput {
  std::filesystem::path checkpoint;  // <out>/model.ckpt
  std::filesystem::path history;     // <out>/history.csv
  nn::TrainHistory train_history;
};

TrainOutput cmd_train(const RunConfig& config, std::ostream& log);

struct PredictOutput {
  std::filesystem::path forecast_json;  // <out>/forecast.json
  std::filesystem::path forecast_csv;   // <out>/forecast.csv
  ForecastResult result;
};

/// Rebuilds the regime's windows from the data and runs the checkpointed
/// model over the test days. Throws DataError on an architecture mismatch.
PredictOutput cmd_predict(const RunConfig& config, const std::filesystem::path& checkpoint,
                          std::ostream& log);

struct BacktestOutput {
  std::filesystem::path ledger_json;  // <out>/ledger.json
  std::filesystem::path signals_csv;  // <out>/signals.csv
  TradeLedger ledger;
};

/// Threshold strategy over a forecast JSON; `perfect` trades on the actual
/// prices instead of the predictions.
BacktestOutput cmd_backtest(const RunConfig& config, const std::filesystem::path& predictions,
                            bool perfect, std::ostream& log);

/// Trains and predicts every config, then writes a comparison report into
/// the first config's output directory. All configs must share asset,
/// price file and regime.
ReportOutput cmd_compare(std::span<const RunConfig> configs, std::ostream& log);

/// Validates a sentiment CSV; returns the number of rows.
std::size_t cmd_sentiment_check(const std::filesystem::path& path, std::ostream& log);

}  // namespace senticast
