#include <gtest/gtest.h>

#include "senticast/sentiment.hpp"
#include "test_support.hpp"

namespace senticast {
namespace {

SentimentSeries scores(std::initializer_list<std::pair<const char*, double>> rows) {
  std::vector<SentimentPoint> pts;
  for (const auto& [d, s] : rows) pts.push_back({Date::parse(d), s});
  return SentimentSeries(std::move(pts));
}

TEST(SentimentCsv, ParsesRows) {
  const auto loaded = parse_sentiment_csv("date,score\n2023-01-01,0.8\n2023-01-02,-1.0\n");
  ASSERT_EQ(loaded.series.size(), 2u);
  EXPECT_EQ(loaded.series[1].score, -1.0);
}

TEST(SentimentCsv, RejectsOutOfRangeScore) {
  EXPECT_THROW(parse_sentiment_csv("date,score\n2023-01-01,1.5\n"), DataError);
  EXPECT_THROW(parse_sentiment_csv("date,score\n2023-01-01,-1.0001\n"), DataError);
}

TEST(SentimentCsv, HeaderOnlyIsEmpty) {
  EXPECT_TRUE(parse_sentiment_csv("date,score\n").series.empty());
}

TEST(SentimentCsv, RejectsDuplicatesAndMalformedRows) {
  EXPECT_THROW(parse_sentiment_csv("date,score\n2023-01-01,0.1\n2023-01-01,0.2\n"), DataError);
  EXPECT_THROW(parse_sentiment_csv("date,score\n2023-01-01,nan\n"), DataError);
  EXPECT_THROW(parse_sentiment_csv("date,label\n2023-01-01,0.1\n"), DataError);
  EXPECT_THROW(parse_sentiment_csv(""), DataError);
}

TEST(Labels, SignedConfidenceMapping) {
  EXPECT_EQ(label_to_score("positive", 0.9), 0.9);
  EXPECT_EQ(label_to_score("neutral", 0.99), 0.0);
  EXPECT_EQ(label_to_score("negative", 1.0), -1.0);
  EXPECT_EQ(label_to_score(SentimentLabel::negative, 0.25), -0.25);
  EXPECT_THROW(label_to_score("bullish", 0.5), DataError);
  EXPECT_THROW(label_to_score("positive", 1.2), DataError);
}

TEST(Align, MatchingDates) {
  const auto prices = testing::make_series({10, 11, 12});
  const auto a = align(prices, scores({{"2023-01-01", 0.1}, {"2023-01-02", 0.2}, {"2023-01-03", 0.3}}));
  EXPECT_EQ(a.size(), 3u);
  EXPECT_EQ(a.scores, (std::vector<double>{0.1, 0.2, 0.3}));
  EXPECT_EQ(a.closes, (std::vector<double>{10, 11, 12}));
  EXPECT_TRUE(a.diagnostics.empty());
}

TEST(Align, NeutralFillSubstitutesZero) {
  const auto prices = testing::make_series({10, 11, 12});
  const auto a = align(prices, scores({{"2023-01-01", 0.1}, {"2023-01-03", 0.3}}),
                       MissingPolicy::neutral_fill);
  EXPECT_EQ(a.scores, (std::vector<double>{0.1, 0.0, 0.3}));
  EXPECT_FALSE(a.diagnostics.empty());
}

TEST(Align, ErrorPolicyRejectsMissingDate) {
  const auto prices = testing::make_series({10, 11, 12});
  EXPECT_THROW(align(prices, scores({{"2023-01-01", 0.1}, {"2023-01-03", 0.3}}), MissingPolicy::error),
               DataError);
}

TEST(Align, ExtraSentimentDatesAreIgnoredWithDiagnostic) {
  const auto prices = testing::make_series({10, 11});
  const auto a = align(prices,
                       scores({{"2022-12-31", 0.9}, {"2023-01-01", 0.1}, {"2023-01-02", 0.2},
                               {"2023-01-09", -0.4}}),
                       MissingPolicy::error);
  EXPECT_EQ(a.scores, (std::vector<double>{0.1, 0.2}));
  EXPECT_EQ(a.diagnostics.size(), 2u);
  EXPECT_EQ(a.prices().size(), 2u);
}

TEST(Align, EmptySentimentFillsNeutral) {
  const auto a = align(testing::make_series({10, 11}), SentimentSeries{});
  EXPECT_EQ(a.scores, (std::vector<double>{0.0, 0.0}));
}

}  // namespace
}  // namespace senticast
