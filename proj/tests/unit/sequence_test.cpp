#include <gtest/gtest.h>

#include <random>

#include "senticast/sequence.hpp"
#include "test_support.hpp"

namespace senticast {
namespace {

using Rows = std::vector<std::vector<double>>;

TEST(SeqPlain, Trace) {
  const std::vector<double> s{1, 2, 3, 4};
  const auto d = seq_plain(s, 2);
  EXPECT_EQ(d.inputs, (Rows{{1, 2}, {2, 3}}));
  EXPECT_EQ(d.targets, (std::vector<double>{3, 4}));
  EXPECT_EQ(d.sentiment_mode, SentimentMode::none);
}

TEST(SeqPlain, TooShortThrows) {
  const std::vector<double> s{1, 2, 3};
  EXPECT_THROW(seq_plain(s, 3), DataError);
  EXPECT_THROW(seq_plain(s, 0), DataError);
}

TEST(SeqPlain, CountAfterPaperSplit) {
  const std::vector<double> s(497, 0.5);
  EXPECT_EQ(seq_plain(s, 10).size(), 487u);
}

TEST(SeqCurrent, Trace) {
  const std::vector<double> p{10, 11, 12, 13, 14}, n{0, 1, 2, 3, 4};
  const auto d = seq_with_cur_sent(p, n, 2);
  EXPECT_EQ(d.inputs, (Rows{{10, 11, 2}, {11, 12, 3}, {12, 13, 4}}));
  EXPECT_EQ(d.targets, (std::vector<double>{12, 13, 14}));
}

TEST(SeqCurrent, ZeroSentimentAppendsZero) {
  const std::vector<double> p{0.1, 0.4, 0.2, 0.9, 0.5}, z(5, 0.0);
  const auto plain = seq_plain(p, 3);
  const auto cur = seq_with_cur_sent(p, z, 3);
  for (std::size_t k = 0; k < plain.size(); ++k) {
    auto expected = plain.inputs[k];
    expected.push_back(0.0);
    EXPECT_EQ(cur.inputs[k], expected);
  }
}

TEST(SeqPrevious, Trace) {
  const std::vector<double> p{10, 11, 12, 13, 14}, n{0, 1, 2, 3, 4};
  const auto d = seq_with_prev_sent(p, n, 2);
  EXPECT_EQ(d.inputs, (Rows{{10, 11, 1}, {11, 12, 2}, {12, 13, 3}}));
}

TEST(SeqPrevious, ConstantSentimentMatchesCurrent) {
  const std::vector<double> p{0.1, 0.4, 0.2, 0.9, 0.5, 0.3}, c(6, 0.7);
  const auto a = seq_with_prev_sent(p, c, 2);
  const auto b = seq_with_cur_sent(p, c, 2);
  EXPECT_EQ(a.inputs, b.inputs);
  EXPECT_EQ(a.targets, b.targets);
}

TEST(SeqSentiment, LengthMismatchThrows) {
  const std::vector<double> p{1, 2, 3, 4}, n{1, 2, 3};
  EXPECT_THROW(seq_with_cur_sent(p, n, 2), DataError);
  EXPECT_THROW(seq_with_prev_sent(p, n, 2), DataError);
}

TEST(BuildWindows, MatchesOracleOnRandomData) {
  std::mt19937_64 gen(31);
  for (std::size_t len = 4; len <= 20; ++len) {
    std::vector<double> s(len), sent(len);
    for (std::size_t i = 0; i < len; ++i) {
      s[i] = testing::uniform(gen, 0.0, 1.0);
      sent[i] = testing::uniform(gen, -1.0, 1.0);
    }
    for (auto mode : {SentimentMode::none, SentimentMode::current, SentimentMode::previous}) {
      const auto d = build_windows(s, sent, 3, mode);
      const auto expected = testing::oracle_windows(s, sent, 3, mode);
      EXPECT_EQ(d.inputs, expected.inputs);
      EXPECT_EQ(d.targets, expected.targets);
      EXPECT_EQ(d.size(), len - 3);
    }
  }
}

TEST(BuildWindows, CurrentAndPreviousDifferOnlyInLastSlot) {
  const std::vector<double> s{0.1, 0.2, 0.3, 0.4, 0.5, 0.6}, n{-0.5, 0.1, 0.9, -0.2, 0.3, 0.0};
  const auto cur = build_windows(s, n, 2, SentimentMode::current);
  const auto prev = build_windows(s, n, 2, SentimentMode::previous);
  for (std::size_t k = 0; k < cur.size(); ++k) {
    EXPECT_TRUE(std::equal(cur.inputs[k].begin(), cur.inputs[k].end() - 1, prev.inputs[k].begin()));
    EXPECT_EQ(cur.inputs[k].back(), n[k + 2]);
    EXPECT_EQ(prev.inputs[k].back(), n[k + 1]);
  }
}

TEST(SentimentModes, ParseRoundTrip) {
  for (auto mode : {SentimentMode::none, SentimentMode::current, SentimentMode::previous}) {
    EXPECT_EQ(parse_sentiment_mode(to_string(mode)), mode);
  }
  EXPECT_THROW(parse_sentiment_mode("tomorrow"), std::exception);
}

}  // namespace
}  // namespace senticast
