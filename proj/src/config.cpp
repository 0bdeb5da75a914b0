#include "senticast/config.hpp"

#include <charconv>
#include <set>

#include "csv_util.hpp"

namespace senticast {

KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw DataError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = detail::trim(line.substr(0, eq));
    if (key.empty()) throw DataError("config line " + std::to_string(line_no) + ": empty key");
    kv[std::string(key)] = std::string(detail::trim(line.substr(eq + 1)));
  }
  return kv;
}

KeyValues load_key_values(const std::filesystem::path& path) {
  return parse_key_values(detail::read_file(path));
}

std::string RunConfig::model_name() const {
  return senticast::model_name(model, use_sentiment);
}

std::vector<int> default_units(std::string_view asset, nn::LayerKind model) {
  if (model == nn::LayerKind::lstm && (asset == "BTC" || asset == "btc")) return {50, 30, 20};
  return {55, 25, 20};
}

namespace {

double to_real(const std::string& key, const std::string& v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw DataError("config: '" + key + "' expects a number, got '" + v + "'");
  }
  return out;
}

template <typename Int>
Int to_int(const std::string& key, const std::string& v) {
  Int out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw DataError("config: '" + key + "' expects an integer, got '" + v + "'");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw DataError("config: '" + key + "' expects true/false, got '" + v + "'");
}

std::vector<int> to_units(const std::string& key, const std::string& v) {
  std::vector<int> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = v.find(',', start);
    const auto part = std::string(detail::trim(std::string_view(v).substr(start, comma - start)));
    out.push_back(to_int<int>(key, part));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "asset", "prices", "sentiment", "missing_policy", "regime", "model",
      "use_sentiment", "previous_all_phases", "units", "n", "lr", "epochs", "m",
      "seed", "outer_frac", "inner_frac", "clip_norm", "buy_threshold",
      "sell_threshold", "tx_rate", "initial_capital", "out"};
  return keys;
}

}  // namespace

RunConfig make_run_config(const KeyValues& kv) {
  for (const auto& [key, value] : kv) {
    if (!known_keys().contains(key)) throw DataError("config: unknown key '" + key + "'");
  }
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };

  RunConfig rc;
  if (auto v = get("asset")) rc.asset = *v;
  if (auto v = get("prices")) rc.prices = *v;
  if (auto v = get("sentiment")) rc.sentiment = *v;
  if (auto v = get("missing_policy")) {
    if (*v == "error") rc.missing_policy = MissingPolicy::error;
    else if (*v == "neutral_fill") rc.missing_policy = MissingPolicy::neutral_fill;
    else throw DataError("config: missing_policy must be error or neutral_fill");
  }
  if (auto v = get("model")) {
    rc.model = nn::parse_layer_kind(*v);
    if (rc.model == nn::LayerKind::dense) throw DataError("config: model must be lstm or bilstm");
  }
  if (auto v = get("use_sentiment")) rc.use_sentiment = to_bool("use_sentiment", *v);
  if (auto v = get("previous_all_phases")) {
    rc.previous_all_phases = to_bool("previous_all_phases", *v);
  }
  const Regime regime = parse_regime(get("regime").value_or("intraday"));
  if (rc.previous_all_phases && regime != Regime::one_day_ahead) {
    throw DataError("config: previous_all_phases applies to one_day_ahead only");
  }

  std::vector<int> units = default_units(rc.asset, rc.model);
  if (auto v = get("units")) units = to_units("units", *v);
  std::vector<nn::LayerSpec> arch;
  try {
    arch = nn::make_architecture(rc.model, units);
  } catch (const nn::ShapeError& e) {
    throw DataError(std::string("config: ") + e.what());
  }
  rc.regime = default_regime_config(regime, std::move(arch), rc.use_sentiment,
                                    rc.previous_all_phases);

  if (is_future(regime) && (!get("n") || !get("lr"))) {
    throw DataError("config: future regimes require explicit n and lr");
  }
  if (auto v = get("n")) rc.regime.n = to_int<std::size_t>("n", *v);
  if (auto v = get("lr")) rc.regime.lr = to_real("lr", *v);
  if (auto v = get("epochs")) rc.regime.epochs = to_int<int>("epochs", *v);
  if (auto v = get("m")) rc.regime.m = to_int<std::size_t>("m", *v);
  if (auto v = get("seed")) rc.regime.seed = to_int<std::uint64_t>("seed", *v);
  if (auto v = get("outer_frac")) rc.regime.outer_frac = to_real("outer_frac", *v);
  if (auto v = get("inner_frac")) rc.regime.inner_frac = to_real("inner_frac", *v);
  if (auto v = get("clip_norm")) rc.regime.clip_norm = to_real("clip_norm", *v);
  rc.regime.validate();

  rc.strategy = default_strategy(rc.asset);
  if (auto v = get("buy_threshold")) rc.strategy.buy_threshold = to_real("buy_threshold", *v);
  if (auto v = get("sell_threshold")) rc.strategy.sell_threshold = to_real("sell_threshold", *v);
  if (auto v = get("tx_rate")) rc.strategy.tx_rate = to_real("tx_rate", *v);
  if (auto v = get("initial_capital")) {
    rc.strategy.initial_capital = to_real("initial_capital", *v);
  }
  rc.strategy.validate();

  if (auto v = get("out")) rc.out_dir = *v;
  return rc;
}

}  // namespace senticast
