#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "senticast/timeseries.hpp"

namespace senticast {

struct SentimentPoint {
  Date date;
  double score = 0.0;  // in [-1, 1]
};

/// Strictly date-ordered daily sentiment scores. May be empty.
class SentimentSeries {
 public:
  SentimentSeries() = default;
  explicit SentimentSeries(std::vector<SentimentPoint> points);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const SentimentPoint& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<SentimentPoint>& points() const { return points_; }

 private:
  std::vector<SentimentPoint> points_;
};

struct LoadedSentiment {
  SentimentSeries series;
  std::vector<std::string> diagnostics;
};

/// Reads a `date,score` CSV. A header-only file yields an empty series.
LoadedSentiment load_sentiment_series(const std::filesystem::path& path);
LoadedSentiment parse_sentiment_csv(std::string_view text);

enum class SentimentLabel { positive, neutral, negative };

SentimentLabel parse_label(std::string_view text);

/// Signed-confidence mapping: +c for positive, -c for negative, 0 for neutral.
double label_to_score(SentimentLabel label, double confidence);
double label_to_score(std::string_view label, double confidence);

enum class MissingPolicy { error, neutral_fill };

/// Price and sentiment arrays on the price dates.
struct AlignedSeries {
  std::vector<Date> dates;
  std::vector<double> closes;
  std::vector<double> scores;
  std::vector<std::string> diagnostics;

  std::size_t size() const { return dates.size(); }
  PriceSeries prices() const;
};

AlignedSeries align(const PriceSeries& prices, const SentimentSeries& sentiment,
                    MissingPolicy missing_policy = MissingPolicy::neutral_fill);

}  // namespace senticast
