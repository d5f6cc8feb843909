#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dagic/annotations.hpp"
#include "dagic/benchmark.hpp"
#include "dagic/error.hpp"
#include "dagic/ic_metrics.hpp"
#include "dagic/text.hpp"

namespace dagic {

/// Settings shared by every subcommand.
struct RunConfig {
  std::string obo_path;
  std::optional<std::string> ns;
  std::set<std::string> relations{"is_a"};
  std::string corpus_path;
  AnnotationFormat corpus_format = AnnotationFormat::Tsv;
  std::size_t min_depth = 2;
  Metric metric = Metric::Gic;
  std::size_t bin_size = 1000;
  bool exclude_identical = true;
  std::size_t workers = 0;
  std::string out_dir;

  std::string bitscores_path;
  std::string semsim_path;
  std::string pairs_path;
  RegressionMode regression = RegressionMode::BinnedMeans;
  CountMode count_mode = CountMode::Gene;
  DepthFilterStage depth_stage = DepthFilterStage::Direct;
};

/// Keys accepted in config files, as DAGIC_* variables and as --flags.
inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "obo",     "namespace", "relations",  "corpus",     "corpus-format", "min-depth",
      "metric",  "bin-size",  "include-identical", "workers", "out-dir",   "bitscores",
      "semsim",  "pairs",     "regression", "count-mode", "depth-filter",
  };
  return keys;
}

inline constexpr std::string_view kEnvPrefix = "DAGIC_";

inline std::string env_name(std::string_view key) {
  std::string out(kEnvPrefix);
  for (char c : key) out += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

using Settings = std::map<std::string, std::string>;

/// Flat `key = value` file; '#' starts a comment line.
inline Settings parse_config(std::istream& in) {
  Settings out;
  std::string line;
  std::size_t lineno = 0;
  const auto& keys = config_keys();
  while (text::read_line(in, line)) {
    ++lineno;
    const auto l = text::trim(line);
    if (l.empty() || l.front() == '#') continue;
    const auto eq = l.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorCode::InvalidConfig, "expected 'key = value'", lineno);
    std::string key(text::trim(l.substr(0, eq)));
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw Error(ErrorCode::InvalidConfig, "unknown key '" + key + "'", lineno);
    out[key] = std::string(text::trim(l.substr(eq + 1)));
  }
  return out;
}

inline Settings parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config file " + path.string());
  return parse_config(in);
}

/// DAGIC_* variables, read through `getenv` (injectable for tests).
template <typename Getenv>
Settings settings_from_env(Getenv&& getenv) {
  Settings out;
  for (const auto& key : config_keys())
    if (const char* v = getenv(env_name(key).c_str())) out[key] = v;
  return out;
}

inline Settings settings_from_env() {
  return settings_from_env([](const char* name) { return std::getenv(name); });
}

namespace detail {

inline std::size_t to_count(const std::string& key, const std::string& v) {
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty())
    throw Error(ErrorCode::InvalidConfig, key + " must be a non-negative integer, got '" + v + "'");
  return out;
}

inline bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw Error(ErrorCode::InvalidConfig, key + " must be true or false, got '" + v + "'");
}

}  // namespace detail

/// Applies settings on top of `cfg`. Later layers override earlier ones, so
/// callers apply file, then environment, then command-line settings.
inline void apply_settings(RunConfig& cfg, const Settings& s) {
  for (const auto& [key, value] : s) {
    if (key == "obo") {
      cfg.obo_path = value;
    } else if (key == "namespace") {
      if (value.empty()) {
        cfg.ns.reset();
      } else {
        cfg.ns = value;
      }
    } else if (key == "relations") {
      cfg.relations = {"is_a"};
      for (auto part : text::split(value, ','))
        if (auto r = text::trim(part); !r.empty()) cfg.relations.emplace(r);
    } else if (key == "corpus") {
      cfg.corpus_path = value;
    } else if (key == "corpus-format") {
      cfg.corpus_format = parse_annotation_format(value);
    } else if (key == "min-depth") {
      cfg.min_depth = detail::to_count(key, value);
    } else if (key == "metric") {
      cfg.metric = parse_metric(value);
    } else if (key == "bin-size") {
      cfg.bin_size = detail::to_count(key, value);
      if (cfg.bin_size == 0) throw Error(ErrorCode::InvalidConfig, "bin-size must be positive");
    } else if (key == "include-identical") {
      cfg.exclude_identical = !detail::to_bool(key, value);
    } else if (key == "workers") {
      cfg.workers = detail::to_count(key, value);
    } else if (key == "out-dir") {
      cfg.out_dir = value;
    } else if (key == "bitscores") {
      cfg.bitscores_path = value;
    } else if (key == "semsim") {
      cfg.semsim_path = value;
    } else if (key == "pairs") {
      cfg.pairs_path = value;
    } else if (key == "regression") {
      cfg.regression = parse_regression_mode(value);
    } else if (key == "count-mode") {
      if (value == "gene") {
        cfg.count_mode = CountMode::Gene;
      } else if (value == "event") {
        cfg.count_mode = CountMode::Event;
      } else {
        throw Error(ErrorCode::InvalidConfig, "count-mode must be gene or event");
      }
    } else if (key == "depth-filter") {
      if (value == "direct") {
        cfg.depth_stage = DepthFilterStage::Direct;
      } else if (value == "after-propagation") {
        cfg.depth_stage = DepthFilterStage::AfterPropagation;
      } else {
        throw Error(ErrorCode::InvalidConfig, "depth-filter must be direct or after-propagation");
      }
    } else {
      throw Error(ErrorCode::InvalidConfig, "unknown key '" + key + "'");
    }
  }
}

/// Provenance echo written into summaries. Worker count and output
/// directory are left out so outputs match across them.
inline std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& cfg) {
  std::string relations;
  for (const auto& r : cfg.relations) relations += (relations.empty() ? "" : ",") + r;
  return {
      {"obo", cfg.obo_path},
      {"namespace", cfg.ns.value_or("")},
      {"relations", relations},
      {"corpus", cfg.corpus_path},
      {"corpus-format", cfg.corpus_format == AnnotationFormat::Tsv ? "tsv" : "gaf"},
      {"min-depth", std::to_string(cfg.min_depth)},
      {"metric", std::string(to_string(cfg.metric))},
      {"bin-size", std::to_string(cfg.bin_size)},
      {"include-identical", cfg.exclude_identical ? "false" : "true"},
      {"bitscores", cfg.bitscores_path},
      {"semsim", cfg.semsim_path},
      {"regression", cfg.regression == RegressionMode::BinnedMeans ? "binned" : "raw"},
      {"count-mode", cfg.count_mode == CountMode::Gene ? "gene" : "event"},
      {"depth-filter", cfg.depth_stage == DepthFilterStage::Direct ? "direct" : "after-propagation"},
  };
}

}  // namespace dagic
