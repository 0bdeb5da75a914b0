#include "senticast/commands.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "csv_util.hpp"
#include "senticast/nn/checkpoint.hpp"

namespace senticast {

AlignedSeries load_run_data(const RunConfig& config, std::ostream& log) {
  if (config.prices.empty()) throw DataError("no price file configured");
  auto prices = load_price_series(config.prices);
  for (const auto& d : prices.diagnostics) log << "prices: " << d << "\n";
  SentimentSeries sentiment;
  if (config.use_sentiment) {
    if (config.sentiment.empty()) throw DataError("use_sentiment is on but no sentiment file is configured");
    auto loaded = load_sentiment_series(config.sentiment);
    for (const auto& d : loaded.diagnostics) log << "sentiment: " << d << "\n";
    sentiment = std::move(loaded.series);
  }
  auto aligned = align(prices.series, sentiment,
                       config.use_sentiment ? config.missing_policy : MissingPolicy::neutral_fill);
  if (config.use_sentiment) {
    for (const auto& d : aligned.diagnostics) log << "align: " << d << "\n";
  }
  return aligned;
}

namespace {

nlohmann::json checkpoint_metadata(const RunConfig& config, const PreparedRegime& prepared) {
  return {{"asset", config.asset},
          {"model", config.model_name()},
          {"config", to_json(config.regime)},
          {"normalizer", {{"min", prepared.normalizer.min}, {"max", prepared.normalizer.max}}}};
}

}  // namespace

TrainOutput cmd_train(const RunConfig& config, std::ostream& log) {
  const auto data = load_run_data(config, log);
  const auto prepared = prepare_regime(data, config.regime);
  log << "training " << config.model_name() << " (" << to_string(config.regime.regime) << ", "
      << prepared.train.size() << " windows, " << config.regime.epochs << " epochs)\n";
  auto trained = train_regime(prepared);

  std::filesystem::create_directories(config.out_dir);
  TrainOutput out;
  out.checkpoint = config.out_dir / "model.ckpt";
  out.history = config.out_dir / "history.csv";
  nn::save_checkpoint(out.checkpoint, trained.model, checkpoint_metadata(config, prepared));
  write_text(out.history, history_csv(trained.history));
  write_text(config.out_dir / "history.json", to_json(trained.history).dump(2) + "\n");
  out.train_history = std::move(trained.history);
  log << "best epoch " << out.train_history.best_epoch << "; checkpoint " << out.checkpoint.string()
      << "\n";
  return out;
}

PredictOutput cmd_predict(const RunConfig& config, const std::filesystem::path& checkpoint,
                          std::ostream& log) {
  auto ckpt = nn::load_checkpoint(checkpoint);
  if (ckpt.model.layers != config.regime.arch || ckpt.model.input_dim != 1) {
    throw DataError("checkpoint architecture does not match the configured model");
  }
  const auto data = load_run_data(config, log);
  const auto prepared = prepare_regime(data, config.regime);

  nn::TrainHistory history;
  const auto history_path = checkpoint.parent_path() / "history.json";
  if (std::filesystem::exists(history_path)) {
    history = history_from_json(nlohmann::json::parse(detail::read_file(history_path)));
  }
  PredictOutput out;
  out.result = predict_regime(prepared, ckpt.model, std::move(history));

  std::filesystem::create_directories(config.out_dir);
  out.forecast_json = config.out_dir / "forecast.json";
  out.forecast_csv = config.out_dir / "forecast.csv";
  write_text(out.forecast_json, forecast_to_json(out.result, config.regime).dump(2) + "\n");
  write_text(out.forecast_csv, forecast_csv(out.result));
  const auto metrics = compute_metrics(out.result.actual, out.result.predicted);
  log << config.model_name() << ": MAE " << metrics.mae << ", MAPE " << metrics.mape
      << ", accuracy " << metrics.accuracy << "%\n";
  return out;
}

BacktestOutput cmd_backtest(const RunConfig& config, const std::filesystem::path& predictions,
                            bool perfect, std::ostream& log) {
  const auto forecast = forecast_from_json(nlohmann::json::parse(detail::read_file(predictions)));
  BacktestOutput out;
  out.ledger = perfect ? perfect_foresight_backtest(forecast.actual, config.strategy)
                       : run_backtest(forecast.actual, forecast.predicted, config.strategy);

  std::filesystem::create_directories(config.out_dir);
  out.ledger_json = config.out_dir / "ledger.json";
  out.signals_csv = config.out_dir / "signals.csv";
  write_text(out.ledger_json,
             ledger_to_json(out.ledger, forecast.dates, config.strategy).dump(2) + "\n");
  write_text(out.signals_csv, signals_csv(out.ledger, forecast.dates));
  log << (perfect ? "perfect-foresight " : "") << "backtest: " << out.ledger.events.size()
      << " trades, final value " << out.ledger.final_value << ", profit " << out.ledger.profit
      << "\n";
  return out;
}

ReportOutput cmd_compare(std::span<const RunConfig> configs, std::ostream& log) {
  if (configs.empty()) throw DataError("compare needs at least one config");
  const auto& first = configs.front();
  for (const auto& c : configs) {
    if (c.asset != first.asset) throw DataError("compare: configs mix assets");
    if (c.prices != first.prices) throw DataError("compare: configs use different price files");
    if (c.regime.regime != first.regime.regime) throw DataError("compare: configs mix regimes");
  }

  // Columns follow the fixed order lstm, finbert_lstm, bilstm, finbert_bilstm.
  std::vector<const RunConfig*> ordered;
  for (const auto& c : configs) ordered.push_back(&c);
  auto rank = [](const RunConfig* c) {
    return (c->model == nn::LayerKind::bilstm ? 2 : 0) + (c->use_sentiment ? 1 : 0);
  };
  std::stable_sort(ordered.begin(), ordered.end(),
                   [&](auto* a, auto* b) { return rank(a) < rank(b); });

  std::vector<NamedResult> results;
  for (const auto* c : ordered) {
    const auto data = load_run_data(*c, log);
    log << "running " << c->model_name() << "\n";
    NamedResult named;
    named.name = c->model_name();
    named.result = run_regime(data, c->regime);
    if (c->regime.regime == Regime::one_day_ahead) {
      named.ledger = run_backtest(named.result.actual, named.result.predicted, c->strategy);
      named.strategy = c->strategy;
    }
    results.push_back(std::move(named));
  }
  const std::string title = first.asset + " " + std::string(to_string(first.regime.regime));
  return emit_report(results, first.out_dir, title);
}

std::size_t cmd_sentiment_check(const std::filesystem::path& path, std::ostream& log) {
  const auto loaded = load_sentiment_series(path);
  for (const auto& d : loaded.diagnostics) log << "sentiment: " << d << "\n";
  log << path.string() << ": OK (" << loaded.series.size() << " rows)\n";
  return loaded.series.size();
}

}  // namespace senticast
