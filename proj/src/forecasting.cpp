#include "senticast/forecasting.hpp"

#include <algorithm>
#include <cmath>

#include "senticast/metrics.hpp"

namespace senticast {

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::intraday: return "intraday";
    case Regime::one_day_ahead: return "one_day_ahead";
    case Regime::future_mdt: return "future_mdt";
    case Regime::future_vet: return "future_vet";
  }
  return "?";
}

Regime parse_regime(std::string_view text) {
  if (text == "intraday") return Regime::intraday;
  if (text == "one_day_ahead") return Regime::one_day_ahead;
  if (text == "future_mdt") return Regime::future_mdt;
  if (text == "future_vet") return Regime::future_vet;
  throw DataError("unknown regime '" + std::string(text) + "'");
}

bool is_future(Regime regime) {
  return regime == Regime::future_mdt || regime == Regime::future_vet;
}

void RegimeConfig::validate() const {
  if (n < 1) throw DataError("window size n must be >= 1");
  if (!(lr > 0.0)) throw DataError("learning rate must be positive");
  if (epochs < 1) throw DataError("epochs must be >= 1");
  if (is_future(regime) && m < 1) throw DataError("forecast horizon m must be >= 1");
  if ((sentiment_train == SentimentMode::none) != (sentiment_test == SentimentMode::none)) {
    throw DataError("training and test windows must both carry sentiment or neither");
  }
  if (is_future(regime) && sentiment_test == SentimentMode::previous) {
    throw DataError("future regimes roll out with a neutral sentiment slot");
  }
  try {
    nn::validate_architecture(arch);
  } catch (const nn::ShapeError& e) {
    throw DataError(std::string("invalid architecture: ") + e.what());
  }
}

RegimeConfig default_regime_config(Regime regime, std::vector<nn::LayerSpec> arch,
                                   bool use_sentiment, bool previous_in_all_phases) {
  RegimeConfig c;
  c.regime = regime;
  c.arch = std::move(arch);
  if (!use_sentiment) {
    c.sentiment_train = c.sentiment_test = SentimentMode::none;
    return c;
  }
  switch (regime) {
    case Regime::intraday:
      c.sentiment_train = c.sentiment_test = SentimentMode::current;
      break;
    case Regime::one_day_ahead:
      c.sentiment_train =
          previous_in_all_phases ? SentimentMode::previous : SentimentMode::current;
      c.sentiment_test = SentimentMode::previous;
      break;
    case Regime::future_mdt:
    case Regime::future_vet:
      c.sentiment_train = c.sentiment_test = SentimentMode::current;
      break;
  }
  return c;
}

namespace {

template <typename T>
std::vector<T> sub(const std::vector<T>& v, std::size_t first, std::size_t count) {
  return {v.begin() + static_cast<std::ptrdiff_t>(first),
          v.begin() + static_cast<std::ptrdiff_t>(first + count)};
}

template <typename T>
std::vector<T> concat(std::vector<T> a, const std::vector<T>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::optional<double> rollout_slot(const RegimeConfig& c) {
  // Sentiment for future days is unknown; keep the training window geometry
  // with a neutral score.
  if (c.sentiment_train == SentimentMode::none) return std::nullopt;
  return 0.0;
}

void prepare_windowed(const AlignedSeries& data, PreparedRegime& p) {
  const auto& c = p.config;
  const auto prices = data.prices();
  const auto split = split_hierarchical(prices, c.outer_frac, c.inner_frac);
  const std::size_t n_sub = split.subtrain.size();
  const std::size_t n_val = split.validation.size();
  const std::size_t n_test = split.test.size();
  for (auto [len, name] : {std::pair{n_sub, "subtrain"}, std::pair{n_val, "validation"},
                           std::pair{n_test, "test"}}) {
    if (len <= c.n) {
      throw DataError(std::string("insufficient data: ") + name + " segment has " +
                      std::to_string(len) + " points, window needs more than " +
                      std::to_string(c.n));
    }
  }
  p.normalizer = fit_normalizer(split.subtrain);
  const auto sub_prices = normalize(split.subtrain.closes(), p.normalizer);
  const auto val_prices = normalize(split.validation.closes(), p.normalizer);
  const auto test_prices = normalize(split.test.closes(), p.normalizer);
  const auto sub_sent = sub(data.scores, 0, n_sub);
  const auto val_sent = sub(data.scores, n_sub, n_val);
  const auto test_sent = sub(data.scores, n_sub + n_val, n_test);

  p.train = build_windows(sub_prices, sub_sent, c.n, c.sentiment_train);
  p.validation = build_windows(val_prices, val_sent, c.n, c.sentiment_train);
  p.test = build_windows(test_prices, test_sent, c.n, c.sentiment_test);

  const auto test_closes = split.test.closes();
  const auto test_dates = split.test.dates();
  p.test_actual = sub(test_closes, c.n, n_test - c.n);
  p.test_dates = sub(test_dates, c.n, n_test - c.n);
}

void prepare_future(const AlignedSeries& data, PreparedRegime& p) {
  const auto& c = p.config;
  const auto prices = data.prices();
  const auto split = split_simple(prices, c.outer_frac);
  if (split.test.size() < c.m) {
    throw DataError("insufficient data: test segment has " +
                    std::to_string(split.test.size()) + " points, horizon is " +
                    std::to_string(c.m));
  }
  const std::size_t n_train = split.subtrain.size();
  const auto train_closes = split.subtrain.closes();
  const auto train_sent = sub(data.scores, 0, n_train);

  std::size_t n_fit = n_train;
  if (c.regime == Regime::future_vet) {
    if (n_train <= c.m) throw DataError("insufficient data: no room for validation window");
    n_fit = n_train - c.m;
  }
  if (n_fit <= c.n) {
    throw DataError("insufficient data: training segment has " + std::to_string(n_fit) +
                    " points, window needs more than " + std::to_string(c.n));
  }
  const auto fit_closes = sub(train_closes, 0, n_fit);
  p.normalizer = fit_normalizer(fit_closes);
  const auto fit_norm = normalize(fit_closes, p.normalizer);
  p.train = build_windows(fit_norm, sub(train_sent, 0, n_fit), c.n, c.sentiment_train);

  if (c.regime == Regime::future_vet) {
    p.validation_seed = fit_norm;
    p.validation_actual = sub(train_closes, n_fit, c.m);
    p.forecast_seed = concat(fit_norm, normalize(p.validation_actual, p.normalizer));
  } else {
    p.forecast_seed = fit_norm;
  }
  p.test_actual = sub(split.test.closes(), 0, c.m);
  p.test_dates = sub(split.test.dates(), 0, c.m);
}

}  // namespace

PreparedRegime prepare_regime(const AlignedSeries& data, const RegimeConfig& config) {
  config.validate();
  if (data.closes.size() != data.scores.size() || data.dates.size() != data.closes.size()) {
    throw DataError("aligned series arrays differ in length");
  }
  PreparedRegime p;
  p.config = config;
  if (is_future(config.regime)) {
    prepare_future(data, p);
  } else {
    prepare_windowed(data, p);
  }
  return p;
}

nn::TrainResult train_regime(const PreparedRegime& p) {
  const auto& c = p.config;
  const auto input_dim = 1;
  auto model = nn::Network::initialized(c.arch, input_dim, c.seed);
  nn::TrainOptions options;
  options.epochs = c.epochs;
  options.lr = c.lr;
  options.clip_norm = c.clip_norm;

  nn::ValidationHook hook;
  if (p.validation) {
    const auto val_input = nn::to_sequence<double>(p.validation->inputs);
    const auto& val_targets = p.validation->targets;
    hook = [val_input, &val_targets](const nn::Network& net) {
      const auto pred = nn::network_forward(net, val_input).predictions;
      const std::span<const double> pred_span(pred.data(), static_cast<std::size_t>(pred.size()));
      return nn::mse_loss<double>(pred_span, val_targets);
    };
  } else if (c.regime == Regime::future_vet) {
    hook = [&p](const nn::Network& net) {
      const auto normed = pred_next_m_days(net, p.validation_seed, p.config.n, p.config.m,
                                           rollout_slot(p.config));
      return mae(p.validation_actual, denormalize(normed, p.normalizer));
    };
  }
  return nn::train(std::move(model), p.train, options, hook);
}

ForecastResult predict_regime(const PreparedRegime& p, const nn::Network& model,
                              nn::TrainHistory history) {
  const auto& c = p.config;
  if (model.input_dim != 1 || model.layers != c.arch) {
    throw DataError("model architecture does not match the run configuration");
  }
  ForecastResult r;
  std::vector<double> normed;
  if (p.test) {
    normed = nn::predict_batch(model, p.test->inputs);
  } else {
    normed = pred_next_m_days(model, p.forecast_seed, c.n, c.m, rollout_slot(c));
  }
  r.predicted = denormalize(normed, p.normalizer);
  r.actual = p.test_actual;
  r.dates = p.test_dates;
  r.history = std::move(history);
  return r;
}

ForecastResult run_regime(const AlignedSeries& data, const RegimeConfig& config) {
  const auto prepared = prepare_regime(data, config);
  auto trained = train_regime(prepared);
  return predict_regime(prepared, trained.model, std::move(trained.history));
}

ForecastResult run_intraday(const AlignedSeries& data, RegimeConfig config) {
  config.regime = Regime::intraday;
  return run_regime(data, config);
}

ForecastResult run_one_day_ahead(const AlignedSeries& data, RegimeConfig config) {
  config.regime = Regime::one_day_ahead;
  return run_regime(data, config);
}

ForecastResult run_future_mdt(const AlignedSeries& data, RegimeConfig config) {
  config.regime = Regime::future_mdt;
  return run_regime(data, config);
}

ForecastResult run_future_vet(const AlignedSeries& data, RegimeConfig config) {
  config.regime = Regime::future_vet;
  return run_regime(data, config);
}

std::vector<double> pred_next_m_days(const WindowModel& model, std::span<const double> seed,
                                     std::size_t n, std::size_t m,
                                     std::optional<double> sentiment_slot) {
  if (n < 1) throw DataError("window size n must be >= 1");
  if (seed.size() < n) {
    throw DataError("seed series of length " + std::to_string(seed.size()) +
                    " shorter than window " + std::to_string(n));
  }
  std::vector<double> window(seed.end() - static_cast<std::ptrdiff_t>(n), seed.end());
  std::vector<double> out;
  out.reserve(m);
  std::vector<double> input;
  for (std::size_t step = 0; step < m; ++step) {
    input = window;
    if (sentiment_slot) input.push_back(*sentiment_slot);
    const double next = model(input);
    out.push_back(next);
    window.erase(window.begin());
    window.push_back(next);
  }
  return out;
}

std::vector<double> pred_next_m_days(const nn::Network& model, std::span<const double> seed,
                                     std::size_t n, std::size_t m,
                                     std::optional<double> sentiment_slot) {
  return pred_next_m_days(
      [&model](std::span<const double> w) { return nn::predict_one(model, w); }, seed, n, m,
      sentiment_slot);
}

nlohmann::json to_json(const RegimeConfig& c) {
  nlohmann::json arch = nlohmann::json::array();
  for (const auto& spec : c.arch) {
    arch.push_back({{"kind", std::string(nn::to_string(spec.kind))},
                    {"units", spec.units},
                    {"return_sequences", spec.return_sequences}});
  }
  nlohmann::json j{{"regime", std::string(to_string(c.regime))},
                   {"n", c.n},
                   {"lr", c.lr},
                   {"epochs", c.epochs},
                   {"m", c.m},
                   {"sentiment_train", std::string(to_string(c.sentiment_train))},
                   {"sentiment_test", std::string(to_string(c.sentiment_test))},
                   {"arch", std::move(arch)},
                   {"seed", c.seed},
                   {"outer_frac", c.outer_frac},
                   {"inner_frac", c.inner_frac}};
  j["clip_norm"] = c.clip_norm ? nlohmann::json(*c.clip_norm) : nlohmann::json(nullptr);
  return j;
}

RegimeConfig regime_config_from_json(const nlohmann::json& j) {
  RegimeConfig c;
  c.regime = parse_regime(j.at("regime").get<std::string>());
  c.n = j.at("n").get<std::size_t>();
  c.lr = j.at("lr").get<double>();
  c.epochs = j.at("epochs").get<int>();
  c.m = j.at("m").get<std::size_t>();
  c.sentiment_train = parse_sentiment_mode(j.at("sentiment_train").get<std::string>());
  c.sentiment_test = parse_sentiment_mode(j.at("sentiment_test").get<std::string>());
  for (const auto& a : j.at("arch")) {
    nn::LayerSpec spec;
    spec.kind = nn::parse_layer_kind(a.at("kind").get<std::string>());
    spec.units = a.at("units").get<int>();
    spec.activation = spec.kind == nn::LayerKind::dense ? nn::Activation::linear
                                                        : nn::Activation::tanh;
    spec.return_sequences = a.at("return_sequences").get<bool>();
    c.arch.push_back(spec);
  }
  c.seed = j.at("seed").get<std::uint64_t>();
  c.outer_frac = j.at("outer_frac").get<double>();
  c.inner_frac = j.at("inner_frac").get<double>();
  if (j.contains("clip_norm") && !j["clip_norm"].is_null()) c.clip_norm = j["clip_norm"].get<double>();
  return c;
}

nlohmann::json to_json(const nn::TrainHistory& h) {
  return {{"train_loss", h.train_loss}, {"val_metric", h.val_metric}, {"best_epoch", h.best_epoch}};
}

nn::TrainHistory history_from_json(const nlohmann::json& j) {
  nn::TrainHistory h;
  h.train_loss = j.at("train_loss").get<std::vector<double>>();
  h.val_metric = j.at("val_metric").get<std::vector<double>>();
  h.best_epoch = j.at("best_epoch").get<int>();
  return h;
}

nlohmann::json forecast_to_json(const ForecastResult& r, const RegimeConfig& config) {
  nlohmann::json dates = nlohmann::json::array();
  for (const auto& d : r.dates) dates.push_back(d.iso());
  return {{"dates", std::move(dates)},
          {"actual", r.actual},
          {"predicted", r.predicted},
          {"config", to_json(config)},
          {"history", to_json(r.history)}};
}

ForecastResult forecast_from_json(const nlohmann::json& j) {
  ForecastResult r;
  try {
    for (const auto& d : j.at("dates")) r.dates.push_back(Date::parse(d.get<std::string>()));
    r.actual = j.at("actual").get<std::vector<double>>();
    r.predicted = j.at("predicted").get<std::vector<double>>();
    if (j.contains("history")) r.history = history_from_json(j["history"]);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed forecast JSON: ") + e.what());
  }
  if (r.actual.size() != r.predicted.size() || r.dates.size() != r.actual.size()) {
    throw DataError("forecast JSON arrays differ in length");
  }
  return r;
}

}  // namespace senticast
