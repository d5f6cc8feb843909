#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "dagic/error.hpp"
#include "dagic/text.hpp"

namespace dagic {

/// Directed BLAST bit scores keyed by (query, subject). Self hits (a, a)
/// supply the RRBS denominators.
struct BitScoreTable {
  std::map<std::pair<std::string, std::string>, double> scores;
  std::size_t duplicates = 0;

  const double* find(std::string_view a, std::string_view b) const {
    auto it = scores.find({std::string(a), std::string(b)});
    return it == scores.end() ? nullptr : &it->second;
  }
};

inline double parse_double(std::string_view s, std::size_t lineno) {
  s = text::trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
    throw Error(ErrorCode::MalformedLine, "not a number: '" + std::string(s) + "'", lineno);
  return v;
}

/// Reads `a\tb\tscore` lines. A repeated (a, b) keeps the larger score and
/// bumps `duplicates`.
inline BitScoreTable load_bitscores(std::istream& in) {
  BitScoreTable table;
  std::string line;
  std::size_t lineno = 0;
  while (text::read_line(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    const auto cols = text::split(line, '\t');
    if (cols.size() != 3)
      throw Error(ErrorCode::MalformedLine,
                  "expected 3 tab-separated columns, found " + std::to_string(cols.size()), lineno);
    const auto a = text::trim(cols[0]);
    const auto b = text::trim(cols[1]);
    if (a.empty() || b.empty()) throw Error(ErrorCode::MalformedLine, "empty protein id", lineno);
    const double score = parse_double(cols[2], lineno);
    if (score < 0.0) throw Error(ErrorCode::NegativeScore, "negative bit score", lineno);
    auto [it, inserted] = table.scores.try_emplace({std::string(a), std::string(b)}, score);
    if (!inserted) {
      ++table.duplicates;
      it->second = std::max(it->second, score);
    }
  }
  return table;
}

inline BitScoreTable load_bitscores_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open bit score file " + path.string());
  return load_bitscores(in);
}

/// Relative reciprocal BLAST score:
/// (bits(a,b) + bits(b,a)) / (bits(a,a) + bits(b,b)).
inline double rrbs(const BitScoreTable& table, std::string_view a, std::string_view b) {
  const auto need = [&](std::string_view q, std::string_view s) {
    const double* v = table.find(q, s);
    if (!v)
      throw Error(ErrorCode::MissingScore, "no bit score for (" + std::string(q) + ", " + std::string(s) + ")");
    return *v;
  };
  const double ab = need(a, b);
  const double ba = need(b, a);
  const double aa = need(a, a);
  const double bb = need(b, b);
  if (aa + bb <= 0.0)
    throw Error(ErrorCode::ZeroDenominator,
                "self scores of " + std::string(a) + " and " + std::string(b) + " sum to zero");
  return (ab + ba) / (aa + bb);
}

struct ScoredPair {
  std::string a;
  std::string b;
  double rrbs = 0.0;
};

struct ScoredPairs {
  std::vector<ScoredPair> pairs;  // a < b, sorted
  std::size_t skipped_missing = 0;
  std::size_t skipped_zero = 0;
};

/// Every unordered pair of distinct proteins that appears in the table in
/// either direction and has all four scores.
inline ScoredPairs collect_scored_pairs(const BitScoreTable& table) {
  std::set<std::pair<std::string, std::string>> candidates;
  for (const auto& [key, score] : table.scores) {
    if (key.first == key.second) continue;
    candidates.insert(std::minmax(key.first, key.second));
  }
  ScoredPairs out;
  for (const auto& [a, b] : candidates) {
    try {
      out.pairs.push_back({a, b, rrbs(table, a, b)});
    } catch (const Error& e) {
      if (e.code() == ErrorCode::MissingScore) {
        ++out.skipped_missing;
      } else if (e.code() == ErrorCode::ZeroDenominator) {
        ++out.skipped_zero;
      } else {
        throw;
      }
    }
  }
  return out;
}

struct BenchmarkPair {
  std::string gene_a;
  std::string gene_b;
  double simmax = 0.0;
  double rrbs = 0.0;
};

struct Bin {
  std::size_t index = 0;
  std::size_t count = 0;
  double mean_rrbs = 0.0;
  double mean_simmax = 0.0;
};

enum class RegressionMode { BinnedMeans, RawPairs };

inline RegressionMode parse_regression_mode(std::string_view name) {
  if (name == "binned") return RegressionMode::BinnedMeans;
  if (name == "raw") return RegressionMode::RawPairs;
  throw Error(ErrorCode::InvalidConfig, "regression must be 'binned' or 'raw', got '" + std::string(name) + "'");
}

struct BenchmarkOptions {
  std::size_t bin_size = 1000;
  bool exclude_identical = true;
  RegressionMode regression = RegressionMode::BinnedMeans;
};

struct BenchmarkReport {
  std::vector<Bin> bins;
  double range = 0.0;
  double min = 0.0;  // mean SimMax of the lowest-RRBS bin
  double max = 0.0;  // mean SimMax of the highest-RRBS bin
  double r2 = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t pairs = 0;
  std::size_t excluded_identical = 0;
  std::size_t regression_points = 0;
};

struct OlsFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Closed-form simple linear regression of y on x. A constant y is fitted
/// exactly and reported as r2 = 1.
inline OlsFit ordinary_least_squares(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2) throw Error(ErrorCode::TooFewBins, "regression needs at least 2 points, got " + std::to_string(n));
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::DegenerateRegression, "zero variance in RRBS");
  OlsFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  fit.r2 = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
  return fit;
}

namespace detail {

inline void sort_pairs(std::vector<BenchmarkPair>& pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const BenchmarkPair& l, const BenchmarkPair& r) {
    return std::tie(l.rrbs, l.simmax, l.gene_a, l.gene_b) < std::tie(r.rrbs, r.simmax, r.gene_a, r.gene_b);
  });
}

inline std::vector<Bin> make_bins(std::span<const BenchmarkPair> sorted, std::size_t bin_size) {
  std::vector<Bin> bins;
  for (std::size_t begin = 0; begin < sorted.size(); begin += bin_size) {
    const std::size_t end = std::min(sorted.size(), begin + bin_size);
    Bin b;
    b.index = bins.size();
    b.count = end - begin;
    double sr = 0.0, ss = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      sr += sorted[i].rrbs;
      ss += sorted[i].simmax;
    }
    b.mean_rrbs = sr / static_cast<double>(b.count);
    b.mean_simmax = ss / static_cast<double>(b.count);
    bins.push_back(b);
  }
  return bins;
}

}  // namespace detail

inline constexpr double kIdenticalTolerance = 1e-12;

/// Sorts pairs by (RRBS, SimMax, pair id), bins them, summarizes the
/// extreme bins and regresses mean SimMax on mean RRBS. The regression
/// re-bins after dropping RRBS = 1 pairs when exclude_identical is set;
/// range/min/max always use the unfiltered bins.
inline BenchmarkReport run_benchmark(std::vector<BenchmarkPair> pairs, const BenchmarkOptions& options) {
  if (options.bin_size == 0) throw Error(ErrorCode::InvalidConfig, "bin size must be positive");
  if (pairs.size() < 2)
    throw Error(ErrorCode::TooFewBins, "benchmark needs at least 2 pairs, got " + std::to_string(pairs.size()));
  detail::sort_pairs(pairs);

  BenchmarkReport report;
  report.pairs = pairs.size();
  report.bins = detail::make_bins(pairs, options.bin_size);

  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 1; i < report.bins.size(); ++i) {
    if (report.bins[i].mean_rrbs < report.bins[lo].mean_rrbs) lo = i;
    if (report.bins[i].mean_rrbs >= report.bins[hi].mean_rrbs) hi = i;
  }
  report.min = report.bins[lo].mean_simmax;
  report.max = report.bins[hi].mean_simmax;
  report.range = report.max - report.min;

  std::vector<BenchmarkPair> kept;
  kept.reserve(pairs.size());
  for (const auto& p : pairs) {
    if (options.exclude_identical && std::abs(p.rrbs - 1.0) <= kIdenticalTolerance) {
      ++report.excluded_identical;
    } else {
      kept.push_back(p);
    }
  }

  std::vector<double> x, y;
  if (options.regression == RegressionMode::BinnedMeans) {
    for (const Bin& b : detail::make_bins(kept, options.bin_size)) {
      x.push_back(b.mean_rrbs);
      y.push_back(b.mean_simmax);
    }
  } else {
    for (const auto& p : kept) {
      x.push_back(p.rrbs);
      y.push_back(p.simmax);
    }
  }
  report.regression_points = x.size();
  const OlsFit fit = ordinary_least_squares(x, y);
  report.slope = fit.slope;
  report.intercept = fit.intercept;
  report.r2 = fit.r2;
  return report;
}

}  // namespace dagic
