#include "senticast/backtest.hpp"

#include <cmath>

#include "format_util.hpp"

namespace senticast {

void StrategyConfig::validate() const {
  if (!(initial_capital > 0.0)) throw DataError("initial capital must be positive");
  if (!(tx_rate >= 0.0 && tx_rate < 1.0)) throw DataError("transaction rate must lie in [0, 1)");
  if (!(buy_threshold > 0.0)) throw DataError("buy threshold must be positive");
  if (!(sell_threshold > 0.0)) throw DataError("sell threshold must be positive (a drop magnitude)");
}

StrategyConfig default_strategy(std::string_view asset) {
  StrategyConfig c;
  if (asset == "ETH" || asset == "eth") {
    c.buy_threshold = 0.025;
    c.sell_threshold = 0.015;
    c.tx_rate = 0.003;
  }
  return c;
}

std::string_view to_string(TradeAction action) {
  return action == TradeAction::buy ? "buy" : "sell";
}

TradeLedger run_backtest(std::span<const double> actuals, std::span<const double> predictions,
                         const StrategyConfig& config) {
  config.validate();
  if (actuals.size() != predictions.size()) {
    throw DataError("backtest: actual and predicted lengths differ");
  }
  if (actuals.size() < 2) throw DataError("backtest: need at least two days");
  for (double p : actuals) {
    if (!(p > 0.0)) throw DataError("backtest: non-positive actual price");
  }
  for (double p : predictions) {
    if (!(p > 0.0)) throw DataError("backtest: non-positive predicted price");
  }

  TradeLedger ledger;
  PortfolioState state{config.initial_capital, 0.0};
  const double keep = 1.0 - config.tx_rate;
  for (std::size_t i = 1; i < actuals.size(); ++i) {
    const double prev = actuals[i - 1];
    const double predicted = predictions[i];
    if ((predicted - prev) / prev > config.buy_threshold && state.cash > 0.0) {
      const double units = state.cash / prev * keep;
      ledger.events.push_back({i, TradeAction::buy, prev, units, state.cash * config.tx_rate});
      state.holdings = units;
      state.cash = 0.0;
    } else if ((prev - predicted) / prev > config.sell_threshold && state.holdings > 0.0) {
      const double gross = state.holdings * prev;
      ledger.events.push_back({i, TradeAction::sell, prev, state.holdings, gross * config.tx_rate});
      state.cash = gross * keep;
      state.holdings = 0.0;
    }
  }
  ledger.final_state = state;
  ledger.final_value = state.cash + state.holdings * actuals.back();
  ledger.profit = ledger.final_value - config.initial_capital;
  for (const auto& e : ledger.events) ledger.total_fees += e.fee;
  return ledger;
}

TradeLedger perfect_foresight_backtest(std::span<const double> actuals,
                                       const StrategyConfig& config) {
  return run_backtest(actuals, actuals, config);
}

ReturnStats return_stats(std::span<const double> prices) {
  if (prices.size() < 2) throw DataError("return_stats: need at least two prices");
  const std::size_t count = prices.size() - 1;
  double sum = 0.0;
  for (std::size_t i = 1; i < prices.size(); ++i) {
    sum += (prices[i] - prices[i - 1]) / prices[i - 1];
  }
  ReturnStats stats;
  stats.mean = sum / static_cast<double>(count);
  double sq = 0.0;
  for (std::size_t i = 1; i < prices.size(); ++i) {
    const double d = (prices[i] - prices[i - 1]) / prices[i - 1] - stats.mean;
    sq += d * d;
  }
  stats.stddev = std::sqrt(sq / static_cast<double>(count));
  return stats;
}

namespace {
std::string date_for(std::span<const Date> dates, std::size_t day) {
  if (dates.empty()) return std::to_string(day);
  if (day >= dates.size()) throw DataError("ledger day index beyond supplied dates");
  return dates[day].iso();
}
}  // namespace

nlohmann::json ledger_to_json(const TradeLedger& ledger, std::span<const Date> dates,
                              const StrategyConfig& config) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : ledger.events) {
    events.push_back({{"day", e.day},
                      {"date", date_for(dates, e.day)},
                      {"action", std::string(to_string(e.action))},
                      {"price", e.price},
                      {"amount", e.amount},
                      {"fee", e.fee}});
  }
  return {{"events", std::move(events)},
          {"summary",
           {{"initial_capital", config.initial_capital},
            {"buy_threshold", config.buy_threshold},
            {"sell_threshold", config.sell_threshold},
            {"tx_rate", config.tx_rate},
            {"final_cash", ledger.final_state.cash},
            {"final_holdings", ledger.final_state.holdings},
            {"final_value", ledger.final_value},
            {"profit", ledger.profit},
            {"total_fees", ledger.total_fees},
            {"trades", ledger.events.size()}}}};
}

std::string signals_csv(const TradeLedger& ledger, std::span<const Date> dates) {
  std::string out = "date,action,price\n";
  for (const auto& e : ledger.events) {
    out += date_for(dates, e.day) + "," + std::string(to_string(e.action)) + "," +
           detail::fixed(e.price, 2) + "\n";
  }
  return out;
}

}  // namespace senticast
