#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace senticast {

/// Where (if anywhere) a sentiment score is appended to each price window.
enum class SentimentMode { none, current, previous };

std::string_view to_string(SentimentMode mode);
SentimentMode parse_sentiment_mode(std::string_view text);

/// Rolling windows of a univariate series with next-value targets. In the
/// sentiment modes each window carries one extra trailing element holding
/// the score, so windows are n or n + 1 long.
struct WindowedDataset {
  std::vector<std::vector<double>> inputs;
  std::vector<double> targets;
  std::size_t window_n = 0;
  SentimentMode sentiment_mode = SentimentMode::none;

  std::size_t size() const { return targets.size(); }
  bool empty() const { return targets.empty(); }
};

/// inputs[k] = series[i-n, i), targets[k] = series[i] for i in [n, |series|).
WindowedDataset seq_plain(std::span<const double> series, std::size_t n);

/// As seq_plain with sentiment[i] appended to each window.
WindowedDataset seq_with_cur_sent(std::span<const double> series,
                                  std::span<const double> sentiment, std::size_t n);

/// As seq_plain with sentiment[i - 1] appended to each window.
WindowedDataset seq_with_prev_sent(std::span<const double> series,
                                   std::span<const double> sentiment, std::size_t n);

/// Dispatches on `mode`; `sentiment` is ignored for SentimentMode::none.
WindowedDataset build_windows(std::span<const double> series,
                              std::span<const double> sentiment, std::size_t n,
                              SentimentMode mode);

}  // namespace senticast
