#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "senticast/backtest.hpp"
#include "senticast/forecasting.hpp"
#include "senticast/report.hpp"
#include "senticast/sentiment.hpp"

namespace senticast {

/// Flat `key = value` settings; later assignments win.
using KeyValues = std::map<std::string, std::string>;

/// Parses `key = value` lines. Blank lines and `#` comments are skipped.
KeyValues parse_key_values(std::string_view text);
KeyValues load_key_values(const std::filesystem::path& path);

/// Everything one command needs: data, regime, model and strategy.
struct RunConfig {
  std::string asset = "BTC";
  std::filesystem::path prices;
  std::filesystem::path sentiment;  // optional when use_sentiment is false
  MissingPolicy missing_policy = MissingPolicy::neutral_fill;
  nn::LayerKind model = nn::LayerKind::lstm;
  bool use_sentiment = true;
  bool previous_all_phases = false;
  RegimeConfig regime;
  StrategyConfig strategy;
  std::filesystem::path out_dir = "out";

  /// Column name in comparison reports.
  std::string model_name() const;
};

/// Recognised keys:
///   asset, prices, sentiment, missing_policy, regime, model, use_sentiment,
///   previous_all_phases, units, n, lr, epochs, m, seed, outer_frac,
///   inner_frac, clip_norm, buy_threshold, sell_threshold, tx_rate,
///   initial_capital, out
/// Future regimes require explicit n and lr. Unknown keys are rejected.
RunConfig make_run_config(const KeyValues& kv);

/// Default recurrent unit counts: BTC LSTM 50/30/20; ETH LSTM and every
/// Bi-LSTM 55/25/20.
std::vector<int> default_units(std::string_view asset, nn::LayerKind model);

}  // namespace senticast
