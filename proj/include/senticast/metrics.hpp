#pragma once

#include <span>

namespace senticast {

/// Mean absolute error, in the units of the inputs.
double mae(std::span<const double> actual, std::span<const double> predicted);

/// Mean absolute percentage error as a dimensionless fraction (0.02 == 2%).
/// Throws DataError when any actual value is zero.
double mape(std::span<const double> actual, std::span<const double> predicted);

/// Percentage accuracy, (1 - mape) * 100. Negative when mape > 1.
double accuracy(double mape_value);

struct MetricSet {
  double mae = 0.0;
  double mape = 0.0;      // fraction
  double accuracy = 0.0;  // percent
};

MetricSet compute_metrics(std::span<const double> actual, std::span<const double> predicted);

}  // namespace senticast
