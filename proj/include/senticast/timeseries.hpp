#pragma once

#include <chrono>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace senticast {

/// Raised for malformed or invariant-violating input data.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Calendar day at UTC granularity.
class Date {
 public:
  Date() = default;
  explicit Date(std::chrono::year_month_day ymd);

  /// Parses `YYYY-MM-DD`; throws DataError on anything else.
  static Date parse(std::string_view text);

  std::string iso() const;
  std::chrono::sys_days days() const { return days_; }

  /// Whole days from `other` to this date.
  long days_since(const Date& other) const {
    return (days_ - other.days_).count();
  }

  friend auto operator<=>(const Date&, const Date&) = default;

 private:
  std::chrono::sys_days days_{};
};

struct PricePoint {
  Date date;
  double close = 0.0;
};

/// Strictly date-ordered daily closes.
class PriceSeries {
 public:
  PriceSeries() = default;
  /// Validates ordering and positivity; an empty series is allowed only
  /// as a split segment (see SplitResult::validation).
  explicit PriceSeries(std::vector<PricePoint> points);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const PricePoint& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<PricePoint>& points() const { return points_; }

  std::vector<double> closes() const;
  std::vector<Date> dates() const;

  /// Contiguous sub-range [first, first + count).
  PriceSeries slice(std::size_t first, std::size_t count) const;

  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

 private:
  std::vector<PricePoint> points_;
};

/// Result of a load: the series plus non-fatal findings (calendar gaps,
/// ignored columns).
struct LoadedPrices {
  PriceSeries series;
  std::vector<std::string> diagnostics;
};

/// Reads a `date,close` CSV. Extra columns after `close` are ignored.
LoadedPrices load_price_series(const std::filesystem::path& path);
LoadedPrices parse_price_csv(std::string_view text);

struct NormalizationParams {
  double min = 0.0;
  double max = 1.0;
};

/// Min-max fit over the closes of `series`. Throws DataError when the series
/// has fewer than two points or all closes are equal.
NormalizationParams fit_normalizer(const PriceSeries& series);
NormalizationParams fit_normalizer(std::span<const double> values);

std::vector<double> normalize(std::span<const double> values,
                              const NormalizationParams& params);
std::vector<double> denormalize(std::span<const double> values,
                                const NormalizationParams& params);

struct SplitResult {
  PriceSeries subtrain;
  PriceSeries validation;  // empty for simple splits
  PriceSeries test;
};

/// Number of points kept in the earlier segment when `n` points are split at
/// fraction `frac`: floor(frac * n).
std::size_t leading_count(std::size_t n, double frac);

/// Train/test split at `outer_frac`, then the train part split again at
/// `inner_frac` into subtrain/validation.
SplitResult split_hierarchical(const PriceSeries& series, double outer_frac,
                               double inner_frac);

/// Train/test split with no validation segment.
SplitResult split_simple(const PriceSeries& series, double frac);

}  // namespace senticast
