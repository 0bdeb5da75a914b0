#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "senticast/timeseries.hpp"
#include "test_support.hpp"

namespace senticast {
namespace {

TEST(Date, ParseAndFormat) {
  EXPECT_EQ(Date::parse("2023-01-05").iso(), "2023-01-05");
  EXPECT_EQ(Date::parse("2024-03-01").days_since(Date::parse("2024-02-28")), 2);
  EXPECT_THROW(Date::parse("2023-02-30"), DataError);
  EXPECT_THROW(Date::parse("2023-1-05"), DataError);
  EXPECT_THROW(Date::parse("yesterday"), DataError);
}

TEST(PriceCsv, ParsesRows) {
  const auto loaded = parse_price_csv("date,close\n2023-01-01,100.0\n2023-01-02,101.5\n");
  ASSERT_EQ(loaded.series.size(), 2u);
  EXPECT_EQ(loaded.series[1].close, 101.5);
  EXPECT_TRUE(loaded.diagnostics.empty());
}

TEST(PriceCsv, RejectsNonPositiveClose) {
  try {
    parse_price_csv("date,close\n2023-01-01,-5\n");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("non-positive close"), std::string::npos);
  }
}

TEST(PriceCsv, RejectsBadRows) {
  EXPECT_THROW(parse_price_csv("date,close\n2023-01-02,1\n2023-01-01,2\n"), DataError);
  EXPECT_THROW(parse_price_csv("date,close\n2023-01-01,1\n2023-01-01,2\n"), DataError);
  EXPECT_THROW(parse_price_csv("date,close\n2023-01-01,abc\n"), DataError);
  EXPECT_THROW(parse_price_csv("date,close\n2023-01-01\n"), DataError);
  EXPECT_THROW(parse_price_csv("price,date\n2023-01-01,1\n"), DataError);
  EXPECT_THROW(parse_price_csv("date,close\n"), DataError);
}

TEST(PriceCsv, FlagsGapsAndExtraColumns) {
  const auto loaded =
      parse_price_csv("date,close,volume\r\n2023-01-01,1,5\r\n2023-01-04,2,6\r\n\r\n");
  EXPECT_EQ(loaded.series.size(), 2u);
  EXPECT_EQ(loaded.diagnostics.size(), 2u);
}

TEST(PriceCsv, LoadsFile) {
  const auto path = std::filesystem::temp_directory_path() / "senticast_prices_test.csv";
  {
    std::ofstream out(path);
    out << "date,close\n";
    const auto series = testing::make_series(std::vector<double>(585, 20000.0));
    for (const auto& p : series) out << p.date.iso() << ",20000\n";
  }
  EXPECT_EQ(load_price_series(path).series.size(), 585u);
  std::filesystem::remove(path);
  EXPECT_THROW(load_price_series(path), DataError);
}

TEST(Normalizer, FitExamples) {
  const auto p = fit_normalizer(testing::make_series({1, 2, 3}));
  EXPECT_EQ(p.min, 1.0);
  EXPECT_EQ(p.max, 3.0);
  const auto wide = fit_normalizer(testing::make_series({30000, 16500, 73000, 41000}));
  EXPECT_EQ(wide.min, 16500.0);
  EXPECT_EQ(wide.max, 73000.0);
  EXPECT_THROW(fit_normalizer(testing::make_series({5, 5, 5})), DataError);
  EXPECT_THROW(fit_normalizer(testing::make_series({5})), DataError);
}

TEST(Normalizer, TransformExamples) {
  const NormalizationParams p{1.0, 3.0};
  EXPECT_EQ(normalize(std::vector<double>{1, 2, 3}, p), (std::vector<double>{0, 0.5, 1}));
  EXPECT_EQ(normalize(std::vector<double>{4}, p), (std::vector<double>{1.5}));
  EXPECT_EQ(denormalize(std::vector<double>{0, 0.5, 1}, p), (std::vector<double>{1, 2, 3}));
  EXPECT_TRUE(denormalize(std::vector<double>{}, p).empty());
  const NormalizationParams wide{16500.0, 73000.0};
  const auto back = denormalize(normalize(std::vector<double>{16500.37}, wide), wide);
  EXPECT_NEAR(back[0], 16500.37, 16500.37 * 1e-12);
  EXPECT_THROW(normalize(std::vector<double>{1}, NormalizationParams{2.0, 2.0}), DataError);
}

TEST(Normalizer, RoundTripProperty) {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 200; ++trial) {
    const auto len = 2 + gen() % 50;
    std::vector<double> v(len);
    const double scale = std::pow(10.0, testing::uniform(gen, -2.0, 5.0));
    for (auto& x : v) x = testing::uniform(gen, 0.01, 1.0) * scale;
    if (*std::max_element(v.begin(), v.end()) == *std::min_element(v.begin(), v.end())) continue;
    const auto p = fit_normalizer(v);
    const auto z = normalize(v, p);
    for (double x : z) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0);
    }
    const auto back = denormalize(z, p);
    for (std::size_t i = 0; i < len; ++i) EXPECT_NEAR(back[i], v[i], std::abs(v[i]) * 1e-12);
  }
}

TEST(Split, PaperSizedSeries) {
  const auto series = testing::make_series(std::vector<double>(585, 1.0));
  const auto simple = split_simple(series, 0.85);
  EXPECT_EQ(simple.subtrain.size(), 497u);
  EXPECT_TRUE(simple.validation.empty());
  EXPECT_EQ(simple.test.size(), 88u);
  const auto h = split_hierarchical(series, 0.85, 0.85);
  EXPECT_EQ(h.subtrain.size() + h.validation.size(), 497u);
  EXPECT_EQ(h.test.size(), 88u);
}

TEST(Split, HierarchicalHundred) {
  const auto h = split_hierarchical(testing::make_series(std::vector<double>(100, 1.0)), 0.85, 0.85);
  EXPECT_EQ(h.subtrain.size(), 72u);
  EXPECT_EQ(h.validation.size(), 13u);
  EXPECT_EQ(h.test.size(), 15u);
}

TEST(Split, SmallCases) {
  EXPECT_THROW(split_hierarchical(testing::make_series({1, 2}), 0.5, 0.5), DataError);
  const auto two_simple = split_simple(testing::make_series({1, 2}), 0.5);
  EXPECT_EQ(two_simple.subtrain.size(), 1u);
  EXPECT_EQ(two_simple.test.size(), 1u);
  const auto ten = split_simple(testing::make_series(std::vector<double>(10, 1.0)), 0.9);
  EXPECT_EQ(ten.subtrain.size(), 9u);
  EXPECT_EQ(ten.test.size(), 1u);
  EXPECT_THROW(split_simple(testing::make_series({1}), 0.85), DataError);
  EXPECT_THROW(split_simple(testing::make_series({1, 2}), 1.0), DataError);
}

TEST(Split, SegmentsReassembleChronologically) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t len = 10 + gen() % 600;
    std::vector<double> closes(len);
    for (auto& c : closes) c = testing::uniform(gen, 1.0, 100.0);
    const auto series = testing::make_series(closes);
    const double outer = testing::uniform(gen, 0.5, 0.95);
    const double inner = testing::uniform(gen, 0.5, 0.95);
    SplitResult s;
    try {
      s = split_hierarchical(series, outer, inner);
    } catch (const DataError&) {
      continue;
    }
    std::vector<PricePoint> joined;
    for (const auto* seg : {&s.subtrain, &s.validation, &s.test})
      joined.insert(joined.end(), seg->begin(), seg->end());
    ASSERT_EQ(joined.size(), len);
    for (std::size_t i = 0; i < len; ++i) {
      EXPECT_EQ(joined[i].date, series[i].date);
      EXPECT_EQ(joined[i].close, series[i].close);
    }
  }
}

TEST(Split, LeadingCountIsFloor) {
  EXPECT_EQ(leading_count(585, 0.85), 497u);
  EXPECT_EQ(leading_count(100, 0.85), 85u);
  EXPECT_EQ(leading_count(85, 0.85), 72u);
  EXPECT_EQ(leading_count(20, 0.85), 17u);
}

}  // namespace
}  // namespace senticast
