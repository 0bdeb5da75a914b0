#include "senticast/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "csv_util.hpp"

namespace senticast {

namespace {

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw DataError("invalid " + std::string(what) + " in date '" +
                    std::string(text) + "'");
  }
  return value;
}

}  // namespace

Date::Date(std::chrono::year_month_day ymd) {
  if (!ymd.ok()) throw DataError("invalid calendar date");
  days_ = std::chrono::sys_days{ymd};
}

Date Date::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw DataError("malformed date '" + std::string(text) +
                    "' (expected YYYY-MM-DD)");
  }
  const int y = parse_int(text.substr(0, 4), "year");
  const int m = parse_int(text.substr(5, 2), "month");
  const int d = parse_int(text.substr(8, 2), "day");
  const std::chrono::year_month_day ymd{
      std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
      std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) {
    throw DataError("invalid calendar date '" + std::string(text) + "'");
  }
  return Date{ymd};
}

std::string Date::iso() const {
  const std::chrono::year_month_day ymd{days_};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

PriceSeries::PriceSeries(std::vector<PricePoint> points)
    : points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (!(p.close > 0.0) || !std::isfinite(p.close)) {
      throw DataError("non-positive close on " + p.date.iso());
    }
    if (i > 0 && !(points_[i - 1].date < p.date)) {
      throw DataError("duplicate or non-increasing date " + p.date.iso());
    }
  }
}

std::vector<double> PriceSeries::closes() const {
  std::vector<double> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p.close);
  return out;
}

std::vector<Date> PriceSeries::dates() const {
  std::vector<Date> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p.date);
  return out;
}

PriceSeries PriceSeries::slice(std::size_t first, std::size_t count) const {
  if (first + count > points_.size()) {
    throw std::out_of_range("PriceSeries::slice out of range");
  }
  PriceSeries out;
  out.points_.assign(points_.begin() + static_cast<std::ptrdiff_t>(first),
                     points_.begin() + static_cast<std::ptrdiff_t>(first + count));
  return out;
}

LoadedPrices parse_price_csv(std::string_view text) {
  LoadedPrices result;
  const auto rows = detail::parse_csv(text, {"date", "close"}, result.diagnostics);
  std::vector<PricePoint> points;
  points.reserve(rows.size());
  for (const auto& row : rows) {
    PricePoint p;
    try {
      p.date = Date::parse(row.fields[0]);
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(row.line) + ": " + e.what());
    }
    p.close = detail::parse_real(row.fields[1], row.line);
    if (!(p.close > 0.0)) {
      throw DataError("line " + std::to_string(row.line) + ": non-positive close");
    }
    if (!points.empty() && !(points.back().date < p.date)) {
      throw DataError("line " + std::to_string(row.line) +
                      ": duplicate or non-increasing date " + p.date.iso());
    }
    if (!points.empty()) {
      const long gap = p.date.days_since(points.back().date);
      if (gap > 1) {
        result.diagnostics.push_back("gap of " + std::to_string(gap - 1) +
                                     " day(s) before " + p.date.iso());
      }
    }
    points.push_back(p);
  }
  if (points.empty()) throw DataError("price file has no rows");
  result.series = PriceSeries(std::move(points));
  return result;
}

LoadedPrices load_price_series(const std::filesystem::path& path) {
  return parse_price_csv(detail::read_file(path));
}

NormalizationParams fit_normalizer(std::span<const double> values) {
  if (values.size() < 2) {
    throw DataError("normalizer needs at least two values");
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (!(*hi > *lo)) {
    throw DataError("degenerate range: all values equal");
  }
  return {*lo, *hi};
}

NormalizationParams fit_normalizer(const PriceSeries& series) {
  const auto closes = series.closes();
  return fit_normalizer(std::span<const double>(closes));
}

namespace {
void check_params(const NormalizationParams& params) {
  if (!(params.max > params.min) || !std::isfinite(params.min) ||
      !std::isfinite(params.max)) {
    throw DataError("invalid normalization params");
  }
}
}  // namespace

std::vector<double> normalize(std::span<const double> values,
                              const NormalizationParams& params) {
  check_params(params);
  const double range = params.max - params.min;
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(),
                 [&](double v) { return (v - params.min) / range; });
  return out;
}

std::vector<double> denormalize(std::span<const double> values,
                                const NormalizationParams& params) {
  check_params(params);
  const double range = params.max - params.min;
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(),
                 [&](double v) { return v * range + params.min; });
  return out;
}

std::size_t leading_count(std::size_t n, double frac) {
  if (!(frac > 0.0 && frac < 1.0)) {
    throw DataError("split fraction must lie strictly between 0 and 1");
  }
  // The epsilon absorbs representation error such as 0.9 * 10 = 8.999...
  return static_cast<std::size_t>(std::floor(frac * static_cast<double>(n) + 1e-9));
}

SplitResult split_simple(const PriceSeries& series, double frac) {
  const std::size_t n = series.size();
  const std::size_t train = leading_count(n, frac);
  if (train == 0 || train == n) {
    throw DataError("split would leave an empty segment (N=" +
                    std::to_string(n) + ")");
  }
  return {series.slice(0, train), PriceSeries{}, series.slice(train, n - train)};
}

SplitResult split_hierarchical(const PriceSeries& series, double outer_frac,
                               double inner_frac) {
  auto outer = split_simple(series, outer_frac);
  const std::size_t train = outer.subtrain.size();
  const std::size_t sub = leading_count(train, inner_frac);
  if (sub == 0 || sub == train) {
    throw DataError("inner split would leave an empty segment (train=" +
                    std::to_string(train) + ")");
  }
  return {outer.subtrain.slice(0, sub), outer.subtrain.slice(sub, train - sub),
          std::move(outer.test)};
}

}  // namespace senticast
