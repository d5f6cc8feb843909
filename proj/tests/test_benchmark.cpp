#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dagic/benchmark.hpp"
#include "support/fixtures.hpp"

namespace dagic {
namespace {

BitScoreTable scores(const std::string& text) {
  std::istringstream in(text);
  return load_bitscores(in);
}

TEST(BitScores, SelfScore) {
  const auto t = scores("p1\tp1\t100\n");
  ASSERT_NE(t.find("p1", "p1"), nullptr);
  EXPECT_EQ(*t.find("p1", "p1"), 100.0);
}

TEST(BitScores, DuplicateKeepsMaximum) {
  const auto t = scores("p1\tp2\t50\np1\tp2\t70\np1\tp2\t60\n");
  EXPECT_EQ(*t.find("p1", "p2"), 70.0);
  EXPECT_EQ(t.duplicates, 2u);
}

TEST(BitScores, SixLineFixture) {
  const std::string text = "a\ta\t100\nb\tb\t120.5\na\tb\t40\nb\ta\t60\nc\tc\t80\na\tc\t10\n";
  const auto t = scores(text);
  EXPECT_EQ(t.scores.size(), 6u);
  // independent read-back
  std::istringstream in(text);
  std::string a, b;
  double s = 0;
  while (in >> a >> b >> s) EXPECT_EQ(*t.find(a, b), s);
}

TEST(BitScores, Errors) {
  try {
    scores("p1\tp2\t5\np1\tp2\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedLine);
    EXPECT_EQ(e.line(), 2u);
  }
  try {
    scores("p1\tp2\t-1\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeScore);
  }
  EXPECT_THROW(scores("p1\tp2\tabc\n"), Error);
}

TEST(Rrbs, IdenticalAndArithmetic) {
  EXPECT_EQ(rrbs(scores("a\ta\t7\nb\tb\t7\na\tb\t7\nb\ta\t7\n"), "a", "b"), 1.0);
  EXPECT_EQ(rrbs(scores("a\ta\t100\nb\tb\t100\na\tb\t40\nb\ta\t60\n"), "a", "b"), 0.5);
}

TEST(Rrbs, MissingAndZero) {
  try {
    rrbs(scores("a\ta\t100\nb\tb\t100\na\tb\t40\n"), "a", "b");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingScore);
    EXPECT_NE(std::string(e.what()).find("(b, a)"), std::string::npos);
  }
  try {
    rrbs(scores("a\ta\t0\nb\tb\t0\na\tb\t0\nb\ta\t0\n"), "a", "b");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroDenominator);
  }
}

TEST(Rrbs, CollectScoredPairs) {
  const auto t = scores("a\ta\t100\nb\tb\t100\nc\tc\t50\na\tb\t40\nb\ta\t60\na\tc\t5\n");
  const auto p = collect_scored_pairs(t);
  ASSERT_EQ(p.pairs.size(), 1u);
  EXPECT_EQ(p.pairs[0].a, "a");
  EXPECT_EQ(p.pairs[0].b, "b");
  EXPECT_EQ(p.skipped_missing, 1u);
}

std::vector<BenchmarkPair> line_pairs(std::size_t n, double slope, double intercept) {
  std::vector<BenchmarkPair> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(n);
    out.push_back({"g" + std::to_string(i), "h", slope * x + intercept, x});
  }
  return out;
}

TEST(RunBenchmark, PerfectLine) {
  BenchmarkOptions opt;
  opt.bin_size = 5;
  const auto r = run_benchmark(line_pairs(20, 0.5, 0.1), opt);
  EXPECT_EQ(r.bins.size(), 4u);
  EXPECT_NEAR(r.r2, 1.0, 1e-12);
  EXPECT_NEAR(r.slope, 0.5, 1e-12);
  EXPECT_NEAR(r.intercept, 0.1, 1e-12);
  EXPECT_NEAR(r.range, r.max - r.min, 0.0);
  EXPECT_EQ(r.min, r.bins.front().mean_simmax);
  EXPECT_EQ(r.max, r.bins.back().mean_simmax);
}

TEST(RunBenchmark, AllIdenticalHasTooFewBins) {
  std::vector<BenchmarkPair> pairs;
  for (int i = 0; i < 10; ++i) pairs.push_back({"g" + std::to_string(i), "h", 0.1 * i, 1.0});
  BenchmarkOptions opt;
  opt.bin_size = 3;
  try {
    run_benchmark(pairs, opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooFewBins);
  }
  opt.exclude_identical = false;
  EXPECT_THROW(run_benchmark(pairs, opt), Error);  // zero variance in x
  try {
    run_benchmark(pairs, opt);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateRegression);
  }
}

TEST(RunBenchmark, BinSizeLargerThanInput) {
  BenchmarkOptions opt;
  opt.bin_size = 1000;
  try {
    run_benchmark(line_pairs(20, 1.0, 0.0), opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooFewBins);
  }
}

TEST(RunBenchmark, IdenticalExcludedOnlyFromRegression) {
  auto pairs = line_pairs(12, 1.0, 0.0);
  for (int i = 0; i < 4; ++i) pairs.push_back({"id" + std::to_string(i), "x", 0.2, 1.0});
  BenchmarkOptions opt;
  opt.bin_size = 4;
  const auto r = run_benchmark(pairs, opt);
  EXPECT_EQ(r.excluded_identical, 4u);
  EXPECT_EQ(r.bins.size(), 4u);
  EXPECT_NEAR(r.max, 0.2, 1e-15);  // the RRBS = 1 bin still defines max
  EXPECT_EQ(r.regression_points, 3u);
  EXPECT_NEAR(r.r2, 1.0, 1e-12);

  opt.regression = RegressionMode::RawPairs;
  const auto raw = run_benchmark(pairs, opt);
  EXPECT_EQ(raw.regression_points, 12u);
}

TEST(RunBenchmarkProperty, PartitionOrderAndInvariance) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<BenchmarkPair> pairs;
    const std::size_t n = 10 + rng() % 200;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = std::round(u(rng) * 20.0) / 20.0;  // many RRBS ties
      pairs.push_back({"a" + std::to_string(i), "b", std::round(u(rng) * 10) / 10, x});
    }
    BenchmarkOptions opt;
    opt.bin_size = 1 + rng() % 12;
    BenchmarkReport r;
    try {
      r = run_benchmark(pairs, opt);
    } catch (const Error&) {
      continue;
    }
    std::size_t total = 0;
    double weighted = 0.0, global = 0.0;
    for (std::size_t i = 0; i < r.bins.size(); ++i) {
      EXPECT_EQ(r.bins[i].index, i);
      EXPECT_LE(r.bins[i].count, opt.bin_size);
      total += r.bins[i].count;
      weighted += r.bins[i].mean_rrbs * static_cast<double>(r.bins[i].count);
      if (i > 0) EXPECT_GE(r.bins[i].mean_rrbs, r.bins[i - 1].mean_rrbs - 1e-12);
    }
    for (const auto& p : pairs) global += p.rrbs;
    EXPECT_EQ(total, n);
    EXPECT_NEAR(weighted / static_cast<double>(n), global / static_cast<double>(n), 1e-12);
    EXPECT_GE(r.r2, -1e-12);
    EXPECT_LE(r.r2, 1.0 + 1e-12);

    auto shuffled = pairs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto s = run_benchmark(shuffled, opt);
    EXPECT_EQ(s.r2, r.r2);
    EXPECT_EQ(s.range, r.range);
    ASSERT_EQ(s.bins.size(), r.bins.size());
    for (std::size_t i = 0; i < s.bins.size(); ++i) EXPECT_EQ(s.bins[i].mean_simmax, r.bins[i].mean_simmax);

    auto affine = pairs;
    for (auto& p : affine) p.simmax = 2.5 * p.simmax + 0.3;
    EXPECT_NEAR(run_benchmark(affine, opt).r2, r.r2, 1e-9);
  }
}

TEST(Ols, ConstantY) {
  const std::vector<double> x{0, 1, 2}, y{3, 3, 3};
  EXPECT_EQ(ordinary_least_squares(x, y).r2, 1.0);
}

}  // namespace
}  // namespace dagic
