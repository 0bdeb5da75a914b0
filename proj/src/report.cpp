#include "senticast/report.hpp"

#include <fstream>
#include <set>

#include "format_util.hpp"

namespace senticast {

namespace {
constexpr int kMetricDigits = 5;
constexpr int kPriceDigits = 10;
}  // namespace

std::string model_name(nn::LayerKind kind, bool uses_sentiment) {
  std::string base = kind == nn::LayerKind::bilstm ? "bilstm" : "lstm";
  return uses_sentiment ? "finbert_" + base : base;
}

const std::vector<std::string>& ComparisonTable::metric_rows() {
  static const std::vector<std::string> rows = {"MAE", "MAPE", "MAPE (%)", "Accuracy (%)"};
  return rows;
}

std::string ComparisonTable::to_csv() const {
  std::string out = "metric";
  for (const auto& m : models) out += "," + m;
  out += "\n";
  auto row = [&](const std::string& label, auto value) {
    out += label;
    for (const auto& cell : cells) out += "," + detail::sig(value(cell), kMetricDigits);
    out += "\n";
  };
  row("MAE", [](const MetricSet& c) { return c.mae; });
  row("MAPE", [](const MetricSet& c) { return c.mape; });
  row("MAPE (%)", [](const MetricSet& c) { return c.mape * 100.0; });
  row("Accuracy (%)", [](const MetricSet& c) { return c.accuracy; });
  return out;
}

nlohmann::json ComparisonTable::to_json() const {
  nlohmann::json cols = nlohmann::json::array();
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto& c = cells[i];
    cols.push_back({{"model", models[i]},
                    {"mae", detail::sig(c.mae, kMetricDigits)},
                    {"mape", detail::sig(c.mape, kMetricDigits)},
                    {"mape_percent", detail::sig(c.mape * 100.0, kMetricDigits)},
                    {"accuracy_percent", detail::sig(c.accuracy, kMetricDigits)}});
  }
  return cols;
}

ComparisonTable build_comparison(std::span<const NamedResult> results) {
  if (results.empty()) throw DataError("report needs at least one result");
  ComparisonTable table;
  std::set<std::string> seen;
  for (const auto& r : results) {
    if (r.name.empty()) throw DataError("report: empty model name");
    if (!seen.insert(r.name).second) throw DataError("report: duplicate model name " + r.name);
    table.models.push_back(r.name);
    table.cells.push_back(compute_metrics(r.result.actual, r.result.predicted));
  }
  return table;
}

std::string forecast_csv(const ForecastResult& result) {
  std::string out = "date,actual,predicted\n";
  for (std::size_t i = 0; i < result.actual.size(); ++i) {
    out += (i < result.dates.size() ? result.dates[i].iso() : std::to_string(i)) + "," +
           detail::sig(result.actual[i], kPriceDigits) + "," +
           detail::sig(result.predicted[i], kPriceDigits) + "\n";
  }
  return out;
}

std::string history_csv(const nn::TrainHistory& history) {
  std::string out = "epoch,train_loss,val_metric\n";
  for (std::size_t e = 0; e < history.train_loss.size(); ++e) {
    out += std::to_string(e + 1) + "," + detail::sig(history.train_loss[e], kPriceDigits) + ",";
    if (e < history.val_metric.size()) out += detail::sig(history.val_metric[e], kPriceDigits);
    out += "\n";
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("failed writing " + path.string());
}

ReportOutput emit_report(std::span<const NamedResult> results,
                         const std::filesystem::path& out_dir, const std::string& title) {
  ReportOutput report;
  report.table = build_comparison(results);
  std::filesystem::create_directories(out_dir);

  auto emit = [&](const std::string& name, const std::string& text) {
    const auto path = out_dir / name;
    write_text(path, text);
    report.files.push_back(path);
  };

  emit("comparison.csv", report.table.to_csv());

  nlohmann::json summary{{"title", title}, {"table", report.table.to_json()}};
  summary["models"] = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json entry{{"name", r.name},
                         {"predictions", r.result.predicted.size()},
                         {"best_epoch", r.result.history.best_epoch}};
    if (r.ledger) {
      entry["profit"] = detail::fixed(r.ledger->profit, 2);
      entry["final_value"] = detail::fixed(r.ledger->final_value, 2);
      entry["trades"] = r.ledger->events.size();
    }
    summary["models"].push_back(std::move(entry));
  }
  emit("summary.json", summary.dump(2) + "\n");

  for (const auto& r : results) {
    emit(r.name + "_forecast.csv", forecast_csv(r.result));
    emit(r.name + "_history.csv", history_csv(r.result.history));
    if (r.ledger) {
      if (!r.strategy) throw DataError("report: ledger for " + r.name + " lacks its strategy");
      emit(r.name + "_signals.csv", signals_csv(*r.ledger, r.result.dates));
      emit(r.name + "_ledger.json",
           ledger_to_json(*r.ledger, r.result.dates, *r.strategy).dump(2) + "\n");
    }
  }
  return report;
}

}  // namespace senticast
