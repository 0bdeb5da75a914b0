#include "senticast/sentiment.hpp"

#include <cmath>

#include "csv_util.hpp"

namespace senticast {

namespace {
bool in_score_range(double s) { return s >= -1.0 && s <= 1.0; }
}  // namespace

SentimentSeries::SentimentSeries(std::vector<SentimentPoint> points)
    : points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!in_score_range(points_[i].score)) {
      throw DataError("sentiment score out of [-1, 1] on " + points_[i].date.iso());
    }
    if (i > 0 && !(points_[i - 1].date < points_[i].date)) {
      throw DataError("duplicate or non-increasing sentiment date " +
                      points_[i].date.iso());
    }
  }
}

LoadedSentiment parse_sentiment_csv(std::string_view text) {
  LoadedSentiment result;
  const auto rows = detail::parse_csv(text, {"date", "score"}, result.diagnostics);
  std::vector<SentimentPoint> points;
  points.reserve(rows.size());
  for (const auto& row : rows) {
    const std::string where = "line " + std::to_string(row.line) + ": ";
    SentimentPoint p;
    try {
      p.date = Date::parse(row.fields[0]);
    } catch (const DataError& e) {
      throw DataError(where + e.what());
    }
    p.score = detail::parse_real(row.fields[1], row.line);
    if (!in_score_range(p.score)) {
      throw DataError(where + "score " + std::string(row.fields[1]) +
                      " outside [-1, 1]");
    }
    if (!points.empty() && !(points.back().date < p.date)) {
      throw DataError(where + "duplicate or non-increasing date " + p.date.iso());
    }
    points.push_back(p);
  }
  result.series = SentimentSeries(std::move(points));
  return result;
}

LoadedSentiment load_sentiment_series(const std::filesystem::path& path) {
  return parse_sentiment_csv(detail::read_file(path));
}

SentimentLabel parse_label(std::string_view text) {
  if (text == "positive") return SentimentLabel::positive;
  if (text == "neutral") return SentimentLabel::neutral;
  if (text == "negative") return SentimentLabel::negative;
  throw DataError("unknown sentiment label '" + std::string(text) + "'");
}

double label_to_score(SentimentLabel label, double confidence) {
  if (!(confidence >= 0.0 && confidence <= 1.0)) {
    throw DataError("confidence must lie in [0, 1]");
  }
  switch (label) {
    case SentimentLabel::positive:
      return confidence;
    case SentimentLabel::negative:
      return -confidence;
    case SentimentLabel::neutral:
      break;
  }
  return 0.0;
}

double label_to_score(std::string_view label, double confidence) {
  return label_to_score(parse_label(label), confidence);
}

PriceSeries AlignedSeries::prices() const {
  std::vector<PricePoint> points;
  points.reserve(dates.size());
  for (std::size_t i = 0; i < dates.size(); ++i) points.push_back({dates[i], closes[i]});
  return PriceSeries(std::move(points));
}

AlignedSeries align(const PriceSeries& prices, const SentimentSeries& sentiment,
                    MissingPolicy missing_policy) {
  if (prices.empty()) throw DataError("align: empty price series");
  AlignedSeries out;
  out.dates = prices.dates();
  out.closes = prices.closes();
  out.scores.assign(prices.size(), 0.0);

  // Both inputs are strictly date-ordered, so a merge walk suffices.
  std::size_t s = 0;
  std::size_t missing = 0;
  for (std::size_t i = 0; i < prices.size(); ++i) {
    const Date d = prices[i].date;
    while (s < sentiment.size() && sentiment[s].date < d) {
      out.diagnostics.push_back("sentiment date " + sentiment[s].date.iso() +
                                " has no price; ignored");
      ++s;
    }
    if (s < sentiment.size() && sentiment[s].date == d) {
      out.scores[i] = sentiment[s].score;
      ++s;
      continue;
    }
    if (missing_policy == MissingPolicy::error) {
      throw DataError("no sentiment score for " + d.iso());
    }
    ++missing;
  }
  for (; s < sentiment.size(); ++s) {
    out.diagnostics.push_back("sentiment date " + sentiment[s].date.iso() +
                              " has no price; ignored");
  }
  if (missing > 0) {
    out.diagnostics.push_back("filled " + std::to_string(missing) +
                              " missing sentiment day(s) with neutral score 0");
  }
  return out;
}

}  // namespace senticast
