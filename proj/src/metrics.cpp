#include "senticast/metrics.hpp"

#include <cmath>
#include <string>

#include "senticast/timeseries.hpp"

namespace senticast {

namespace {
void check_pair(std::span<const double> a, std::span<const double> p, const char* what) {
  if (a.size() != p.size()) throw DataError(std::string(what) + ": length mismatch");
  if (a.empty()) throw DataError(std::string(what) + ": empty input");
}
}  // namespace

double mae(std::span<const double> actual, std::span<const double> predicted) {
  check_pair(actual, predicted, "mae");
  double sum = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) sum += std::abs(actual[i] - predicted[i]);
  return sum / static_cast<double>(actual.size());
}

double mape(std::span<const double> actual, std::span<const double> predicted) {
  check_pair(actual, predicted, "mape");
  double sum = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (actual[i] == 0.0) throw DataError("mape: zero actual value at index " + std::to_string(i));
    sum += std::abs((actual[i] - predicted[i]) / actual[i]);
  }
  return sum / static_cast<double>(actual.size());
}

double accuracy(double mape_value) { return (1.0 - mape_value) * 100.0; }

MetricSet compute_metrics(std::span<const double> actual, std::span<const double> predicted) {
  MetricSet m;
  m.mae = mae(actual, predicted);
  m.mape = mape(actual, predicted);
  m.accuracy = accuracy(m.mape);
  return m;
}

}  // namespace senticast
