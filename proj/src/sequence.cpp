#include "senticast/sequence.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "senticast/timeseries.hpp"

namespace senticast {

std::string_view to_string(SentimentMode mode) {
  switch (mode) {
    case SentimentMode::none: return "none";
    case SentimentMode::current: return "current";
    case SentimentMode::previous: return "previous";
  }
  return "?";
}

SentimentMode parse_sentiment_mode(std::string_view text) {
  if (text == "none") return SentimentMode::none;
  if (text == "current") return SentimentMode::current;
  if (text == "previous") return SentimentMode::previous;
  throw DataError("unknown sentiment mode '" + std::string(text) + "'");
}

namespace {

void check_length(std::size_t length, std::size_t n) {
  if (n < 1) throw DataError("window size must be at least 1");
  if (length <= n) {
    throw DataError("series of length " + std::to_string(length) +
                    " too short for window " + std::to_string(n));
  }
}

void check_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw DataError("non-finite value in window input");
  }
}

WindowedDataset windows(std::span<const double> series, std::span<const double> sentiment,
                        std::size_t n, SentimentMode mode) {
  check_length(series.size(), n);
  check_finite(series);
  if (mode != SentimentMode::none) {
    if (sentiment.size() != series.size()) {
      throw DataError("price and sentiment lengths differ");
    }
    check_finite(sentiment);
  }
  WindowedDataset ds;
  ds.window_n = n;
  ds.sentiment_mode = mode;
  const std::size_t count = series.size() - n;
  ds.inputs.reserve(count);
  ds.targets.reserve(count);
  for (std::size_t i = n; i < series.size(); ++i) {
    std::vector<double> window(series.begin() + static_cast<std::ptrdiff_t>(i - n),
                               series.begin() + static_cast<std::ptrdiff_t>(i));
    if (mode == SentimentMode::current) window.push_back(sentiment[i]);
    if (mode == SentimentMode::previous) window.push_back(sentiment[i - 1]);
    ds.inputs.push_back(std::move(window));
    ds.targets.push_back(series[i]);
  }
  return ds;
}

}  // namespace

WindowedDataset seq_plain(std::span<const double> series, std::size_t n) {
  return windows(series, {}, n, SentimentMode::none);
}

WindowedDataset seq_with_cur_sent(std::span<const double> series,
                                  std::span<const double> sentiment, std::size_t n) {
  return windows(series, sentiment, n, SentimentMode::current);
}

WindowedDataset seq_with_prev_sent(std::span<const double> series,
                                   std::span<const double> sentiment, std::size_t n) {
  return windows(series, sentiment, n, SentimentMode::previous);
}

WindowedDataset build_windows(std::span<const double> series,
                              std::span<const double> sentiment, std::size_t n,
                              SentimentMode mode) {
  return windows(series, sentiment, n, mode);
}

}  // namespace senticast
