#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "senticast/timeseries.hpp"

namespace senticast {

/// Thresholds are positive fractional returns. A buy fires when the
/// predicted rise over the previous close exceeds buy_threshold; a sell
/// fires when the predicted drop exceeds sell_threshold.
struct StrategyConfig {
  double buy_threshold = 0.030;
  double sell_threshold = 0.010;
  double tx_rate = 0.0001;
  double initial_capital = 100000.0;

  void validate() const;
};

/// Per-asset defaults: BTC (0.030 / 0.010, rate 0.0001), ETH (0.025 / 0.015,
/// rate 0.003), capital 100000.
StrategyConfig default_strategy(std::string_view asset);

struct PortfolioState {
  double cash = 0.0;
  double holdings = 0.0;  // asset units
};

enum class TradeAction { buy, sell };

std::string_view to_string(TradeAction action);

struct TradeEvent {
  std::size_t day = 0;  // index into the price list
  TradeAction action = TradeAction::buy;
  double price = 0.0;   // execution price (previous close)
  double amount = 0.0;  // asset units bought or sold
  double fee = 0.0;     // currency withheld by the transaction rate
};

struct TradeLedger {
  std::vector<TradeEvent> events;
  PortfolioState final_state;
  double final_value = 0.0;
  double profit = 0.0;
  double total_fees = 0.0;
};

/// Full-position threshold strategy over one-day-ahead predictions. Day 0
/// has no previous close and is skipped.
TradeLedger run_backtest(std::span<const double> actuals, std::span<const double> predictions,
                         const StrategyConfig& config);

/// run_backtest with predictions equal to the actual prices.
TradeLedger perfect_foresight_backtest(std::span<const double> actuals,
                                       const StrategyConfig& config);

struct ReturnStats {
  double mean = 0.0;
  double stddev = 0.0;  // population
};

/// Mean and population standard deviation of simple daily returns.
ReturnStats return_stats(std::span<const double> prices);

nlohmann::json ledger_to_json(const TradeLedger& ledger, std::span<const Date> dates,
                              const StrategyConfig& config);

/// `date,action,price` rows, one per trade.
std::string signals_csv(const TradeLedger& ledger, std::span<const Date> dates);

}  // namespace senticast
