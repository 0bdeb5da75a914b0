#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "senticast/backtest.hpp"
#include "senticast/forecasting.hpp"
#include "senticast/metrics.hpp"

namespace senticast {

/// Column name for a model: lstm, finbert_lstm, bilstm or finbert_bilstm.
std::string model_name(nn::LayerKind kind, bool uses_sentiment);

struct NamedResult {
  std::string name;
  ForecastResult result;
  std::optional<TradeLedger> ledger;
  std::optional<StrategyConfig> strategy;  // required when ledger is set
};

/// Metrics (rows) by model (columns).
struct ComparisonTable {
  std::vector<std::string> models;
  std::vector<MetricSet> cells;  // one per model, same order

  static const std::vector<std::string>& metric_rows();
  std::string to_csv() const;
  nlohmann::json to_json() const;
};

ComparisonTable build_comparison(std::span<const NamedResult> results);

struct ReportOutput {
  ComparisonTable table;
  std::vector<std::filesystem::path> files;  // in write order
};

/// Writes comparison.csv, summary.json and per-model
/// <name>_forecast.csv / <name>_history.csv (plus <name>_signals.csv and
/// <name>_ledger.json when a ledger is attached) into `out_dir`.
ReportOutput emit_report(std::span<const NamedResult> results,
                         const std::filesystem::path& out_dir, const std::string& title = "");

/// `date,actual,predicted`
std::string forecast_csv(const ForecastResult& result);
/// `epoch,train_loss,val_metric` (val_metric empty when not recorded)
std::string history_csv(const nn::TrainHistory& history);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace senticast
