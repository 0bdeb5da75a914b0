// senticast: train, predict, backtest and compare sentiment-augmented
// LSTM / Bi-LSTM price forecasters.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "senticast/commands.hpp"

namespace {

using senticast::KeyValues;

struct GlobalOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> overrides;  // key=value
};

KeyValues collect(const std::string& config_path, const GlobalOptions& g) {
  KeyValues kv;
  if (!config_path.empty()) {
    kv = senticast::load_key_values(config_path);
    // Data paths in a config file are relative to that file.
    const auto base = std::filesystem::path(config_path).parent_path();
    for (const char* key : {"prices", "sentiment"}) {
      auto it = kv.find(key);
      if (it != kv.end() && std::filesystem::path(it->second).is_relative()) {
        it->second = (base / it->second).lexically_normal().string();
      }
    }
  }
  for (const auto& o : g.overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw senticast::DataError("--set expects key=value, got '" + o + "'");
    kv[o.substr(0, eq)] = o.substr(eq + 1);
  }
  if (g.seed) kv["seed"] = std::to_string(*g.seed);
  if (!g.out.empty()) kv["out"] = g.out;
  return kv;
}

senticast::RunConfig run_config(const GlobalOptions& g) {
  return senticast::make_run_config(collect(g.config, g));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sentiment-augmented LSTM/Bi-LSTM price forecasting and backtesting"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--config", g.config, "Key-value config file")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Random seed (overrides config)");
  app.add_option("--out", g.out, "Output directory (overrides config)");
  app.add_option("--set", g.overrides, "Override a config key: key=value (repeatable)");

  auto* train = app.add_subcommand("train", "Train a model and write a checkpoint");

  auto* predict = app.add_subcommand("predict", "Predict the test days with a checkpoint");
  std::string checkpoint;
  predict->add_option("--checkpoint", checkpoint, "Checkpoint from `train`")
      ->required()
      ->check(CLI::ExistingFile);

  auto* backtest = app.add_subcommand("backtest", "Run the threshold strategy over a forecast");
  std::string predictions;
  bool perfect = false;
  backtest->add_option("--predictions", predictions, "forecast.json from `predict`")
      ->required()
      ->check(CLI::ExistingFile);
  backtest->add_flag("--perfect", perfect, "Trade on actual prices (perfect foresight)");

  auto* compare = app.add_subcommand("compare", "Train, predict and tabulate several models");
  std::vector<std::string> configs;
  compare->add_option("configs", configs, "Config files, one per model")
      ->required()
      ->check(CLI::ExistingFile);

  auto* check = app.add_subcommand("sentiment-check", "Validate a sentiment CSV");
  std::string sentiment_file;
  check->add_option("file", sentiment_file, "date,score CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*train) {
      senticast::cmd_train(run_config(g), std::cerr);
    } else if (*predict) {
      senticast::cmd_predict(run_config(g), checkpoint, std::cerr);
    } else if (*backtest) {
      senticast::cmd_backtest(run_config(g), predictions, perfect, std::cerr);
    } else if (*compare) {
      std::vector<senticast::RunConfig> runs;
      for (const auto& path : configs) runs.push_back(senticast::make_run_config(collect(path, g)));
      senticast::cmd_compare(runs, std::cerr);
    } else if (*check) {
      senticast::cmd_sentiment_check(sentiment_file, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
