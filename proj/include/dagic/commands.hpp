#pragma once

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dagic/annotations.hpp"
#include "dagic/benchmark.hpp"
#include "dagic/config.hpp"
#include "dagic/error.hpp"
#include "dagic/ic_metrics.hpp"
#include "dagic/obo.hpp"
#include "dagic/ontology.hpp"
#include "dagic/parallel.hpp"
#include "dagic/semsim.hpp"

namespace dagic::cli {

/// Fixed notation, 6 decimals; NaN prints as NA and negative zero as zero.
inline std::string fixed6(double v) {
  if (std::isnan(v)) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

inline std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

/// Exit status for a library error: 1 for I/O, 2 for validation/domain.
inline int exit_code_for(const Error& e) noexcept { return e.code() == ErrorCode::Io ? 1 : 2; }

namespace detail {

inline std::ofstream open_output(const RunConfig& cfg, std::string_view name) {
  std::filesystem::create_directories(cfg.out_dir);
  const auto path = std::filesystem::path(cfg.out_dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  return out;
}

}  // namespace detail

inline Ontology load_ontology(const RunConfig& cfg, std::ostream& err) {
  if (cfg.obo_path.empty()) throw Error(ErrorCode::InvalidConfig, "no ontology given (--obo)");
  const auto terms = obo::parse_obo_file(cfg.obo_path);
  auto graph = obo::to_graph(terms, cfg.ns, cfg.relations);
  if (graph.dropped_edges > 0)
    err << "warning: dropped " << graph.dropped_edges << " edge(s) to filtered or unknown terms\n";
  return build_ontology(std::move(graph.terms), graph.edges);
}

inline AnnotationCorpus load_corpus(const RunConfig& cfg, const Ontology& o, std::ostream& err) {
  if (cfg.corpus_path.empty()) throw Error(ErrorCode::MissingCorpus, "this command needs --corpus");
  const auto pairs = parse_annotations_file(cfg.corpus_path, cfg.corpus_format);
  CorpusOptions options;
  options.min_depth = cfg.min_depth;
  options.count_mode = cfg.count_mode;
  options.depth_stage = cfg.depth_stage;
  auto corpus = build_corpus(pairs, o, options);
  if (corpus.dropped_unknown > 0)
    err << "warning: dropped " << corpus.dropped_unknown << " annotation(s) to terms outside the ontology\n";
  if (corpus.dropped_shallow > 0)
    err << "warning: filtered " << corpus.dropped_shallow << " annotation(s) shallower than depth "
        << cfg.min_depth << "\n";
  return corpus;
}

inline ICTable compute_ic(const RunConfig& cfg, const Ontology& o, const AnnotationCorpus* corpus,
                          std::ostream& err) {
  ICTable table;
  switch (cfg.metric) {
    case Metric::Gic: table = gic(o, cfg.workers); break;
    case Metric::Sic: table = sic(o); break;
    case Metric::Ric:
      if (!corpus) throw Error(ErrorCode::MissingCorpus, "metric ric needs --corpus");
      table = ric(o, *corpus);
      break;
  }
  for (TermIndex t : table.out_of_range)
    err << "diagnostic: " << to_string(table.metric) << "(" << o.id(t) << ") = " << table.raw[t]
        << " lies outside [0, 1]\n";
  return table;
}

/// `entropy`: H(M) with term and edge counts; per-term |Y_x| into
/// y_sizes.tsv when an output directory is set.
inline void cmd_entropy(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Ontology o = load_ontology(cfg, err);
  const EntropyReport r = ontology_entropy(o);
  out << "terms: " << o.size() << "\n";
  out << "edges: " << o.edge_count() << "\n";
  out << "H(M) = " << fixed6(r.total_bits) << " bits\n";
  if (!cfg.out_dir.empty()) {
    auto f = detail::open_output(cfg, "y_sizes.tsv");
    for (TermIndex x = 0; x < o.size(); ++x)
      f << o.id(x) << '\t' << r.y_sizes[x] << '\t' << fixed6(r.conditional_bits[x]) << '\n';
  }
}

inline void write_ic_table(std::ostream& out, const Ontology& o, const ICTable& table) {
  for (TermIndex t = 0; t < o.size(); ++t)
    out << o.id(t) << '\t' << fixed6(table.raw[t]) << '\t' << fixed6(table.normalized[t]) << '\n';
}

/// `ic`: term_id, raw, normalized per term in id order.
inline void cmd_ic(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.metric == Metric::Ric && cfg.corpus_path.empty())
    throw Error(ErrorCode::MissingCorpus, "metric ric needs --corpus");
  const Ontology o = load_ontology(cfg, err);
  std::optional<AnnotationCorpus> corpus;
  if (cfg.metric == Metric::Ric) corpus = load_corpus(cfg, o, err);
  const ICTable table = compute_ic(cfg, o, corpus ? &*corpus : nullptr, err);
  if (cfg.out_dir.empty()) {
    write_ic_table(out, o, table);
  } else {
    auto f = detail::open_output(cfg, "ic_" + std::string(to_string(cfg.metric)) + ".tsv");
    write_ic_table(f, o, table);
  }
}

inline std::vector<std::pair<std::string, std::string>> read_gene_pairs(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open pair list " + path);
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (text::read_line(in, line)) {
    ++lineno;
    if (text::trim(line).empty() || line.front() == '#') continue;
    const auto cols = text::split(line, '\t');
    if (cols.size() < 2) throw Error(ErrorCode::MalformedLine, "expected gene_a<TAB>gene_b", lineno);
    pairs.emplace_back(text::trim(cols[0]), text::trim(cols[1]));
  }
  return pairs;
}

/// SimMax for each pair whose genes both have retained annotations; other
/// pairs are skipped and counted. Output order follows input order.
inline std::vector<GenePairSim> similarities(const Ontology& o, const ICTable& ic, const AnnotationCorpus& c,
                                             const std::vector<std::pair<std::string, std::string>>& pairs,
                                             std::size_t workers, std::size_t& skipped) {
  std::vector<std::optional<GenePairSim>> slots(pairs.size());
  parallel_for(pairs.size(), workers, [&](std::size_t i, std::size_t) {
    const auto& [a, b] = pairs[i];
    if (!c.gene_terms.contains(a) || !c.gene_terms.contains(b)) return;
    slots[i] = gene_similarity(o, ic, c, a, b);
  });
  std::vector<GenePairSim> out;
  skipped = 0;
  for (auto& s : slots) {
    if (s) {
      out.push_back(std::move(*s));
    } else {
      ++skipped;
    }
  }
  return out;
}

/// `semsim`: gene_a, gene_b, simmax, term_a, term_b, mica per pair.
inline void cmd_semsim(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.corpus_path.empty()) throw Error(ErrorCode::MissingCorpus, "semsim needs --corpus");
  const Ontology o = load_ontology(cfg, err);
  const AnnotationCorpus corpus = load_corpus(cfg, o, err);
  const ICTable table = compute_ic(cfg, o, &corpus, err);

  std::vector<std::pair<std::string, std::string>> pairs;
  if (!cfg.pairs_path.empty()) {
    pairs = read_gene_pairs(cfg.pairs_path);
  } else {
    for (auto a = corpus.gene_terms.begin(); a != corpus.gene_terms.end(); ++a)
      for (auto b = std::next(a); b != corpus.gene_terms.end(); ++b) pairs.emplace_back(a->first, b->first);
  }
  std::size_t skipped = 0;
  const auto sims = similarities(o, table, corpus, pairs, cfg.workers, skipped);
  if (skipped > 0) err << "warning: skipped " << skipped << " pair(s) with an unannotated gene\n";

  const auto write = [&](std::ostream& f) {
    for (const auto& s : sims)
      f << s.gene_a << '\t' << s.gene_b << '\t' << fixed6(s.simmax) << '\t' << o.id(s.term_a) << '\t'
        << o.id(s.term_b) << '\t' << o.id(s.mica) << '\n';
  };
  if (cfg.out_dir.empty()) {
    write(out);
  } else {
    auto f = detail::open_output(cfg, "semsim.tsv");
    write(f);
  }
}

using SimilarityLookup = std::map<std::pair<std::string, std::string>, double>;

/// Reads semsim output (first three columns); keys are ordered (min, max).
inline SimilarityLookup read_similarities(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open similarity file " + path);
  SimilarityLookup lookup;
  std::string line;
  std::size_t lineno = 0;
  while (text::read_line(in, line)) {
    ++lineno;
    if (text::trim(line).empty() || line.front() == '#') continue;
    const auto cols = text::split(line, '\t');
    if (cols.size() < 3) throw Error(ErrorCode::MalformedLine, "expected gene_a, gene_b, simmax", lineno);
    std::string a(text::trim(cols[0])), b(text::trim(cols[1]));
    lookup[std::minmax(a, b)] = parse_double(cols[2], lineno);
  }
  return lookup;
}

inline std::string summary_json(const BenchmarkReport& r, const RunConfig& cfg) {
  std::string s = "{\n";
  s += "  \"metric\": " + json_string(to_string(cfg.metric)) + ",\n";
  s += "  \"range\": " + fixed6(r.range) + ",\n";
  s += "  \"min\": " + fixed6(r.min) + ",\n";
  s += "  \"max\": " + fixed6(r.max) + ",\n";
  s += "  \"r2\": " + fixed6(r.r2) + ",\n";
  s += "  \"bins\": " + std::to_string(r.bins.size()) + ",\n";
  s += "  \"excluded_identical\": " + std::to_string(r.excluded_identical) + ",\n";
  s += "  \"pairs\": " + std::to_string(r.pairs) + ",\n";
  s += "  \"regression_points\": " + std::to_string(r.regression_points) + ",\n";
  s += "  \"config\": {\n";
  const auto echo = config_echo(cfg);
  for (std::size_t i = 0; i < echo.size(); ++i)
    s += "    " + json_string(echo[i].first) + ": " + json_string(echo[i].second) +
         (i + 1 < echo.size() ? ",\n" : "\n");
  s += "  }\n}\n";
  return s;
}

inline void write_bins_csv(std::ostream& out, const BenchmarkReport& r) {
  out << "bin_index,count,mean_rrbs,mean_simmax\n";
  for (const Bin& b : r.bins)
    out << b.index << ',' << b.count << ',' << fixed6(b.mean_rrbs) << ',' << fixed6(b.mean_simmax) << '\n';
}

inline void write_plot_data(std::ostream& out, const BenchmarkReport& r) {
  out << "# mean_rrbs\tmean_simmax\n";
  for (const Bin& b : r.bins) out << fixed6(b.mean_rrbs) << '\t' << fixed6(b.mean_simmax) << '\n';
}

/// Joins RRBS with SimMax for every scored protein pair that has a
/// similarity value.
inline std::vector<BenchmarkPair> benchmark_pairs(const RunConfig& cfg, std::ostream& err) {
  if (cfg.bitscores_path.empty()) throw Error(ErrorCode::InvalidConfig, "benchmark needs --bitscores");
  const BitScoreTable scores = load_bitscores_file(cfg.bitscores_path);
  if (scores.duplicates > 0)
    err << "warning: " << scores.duplicates << " duplicate bit score line(s); kept the maximum\n";
  const ScoredPairs scored = collect_scored_pairs(scores);
  if (scored.skipped_missing > 0)
    err << "warning: skipped " << scored.skipped_missing << " pair(s) missing one of the four bit scores\n";
  if (scored.skipped_zero > 0)
    err << "warning: skipped " << scored.skipped_zero << " pair(s) with zero self scores\n";

  std::vector<BenchmarkPair> out;
  std::size_t unannotated = 0;
  if (!cfg.semsim_path.empty()) {
    const SimilarityLookup lookup = read_similarities(cfg.semsim_path);
    for (const auto& p : scored.pairs) {
      auto it = lookup.find({p.a, p.b});
      if (it == lookup.end()) {
        ++unannotated;
        continue;
      }
      out.push_back({p.a, p.b, it->second, p.rrbs});
    }
  } else {
    const Ontology o = load_ontology(cfg, err);
    const AnnotationCorpus corpus = load_corpus(cfg, o, err);
    const ICTable table = compute_ic(cfg, o, &corpus, err);
    std::vector<std::pair<std::string, std::string>> genes;
    for (const auto& p : scored.pairs) genes.emplace_back(p.a, p.b);
    std::size_t skipped = 0;
    const auto sims = similarities(o, table, corpus, genes, cfg.workers, skipped);
    unannotated = skipped;
    std::map<std::pair<std::string, std::string>, double> by_pair;
    for (const auto& s : sims) by_pair[{s.gene_a, s.gene_b}] = s.simmax;
    for (const auto& p : scored.pairs)
      if (auto it = by_pair.find({p.a, p.b}); it != by_pair.end()) out.push_back({p.a, p.b, it->second, p.rrbs});
  }
  if (unannotated > 0) err << "warning: skipped " << unannotated << " scored pair(s) without a similarity\n";
  return out;
}

/// `benchmark`: prints the summary JSON; with an output directory also
/// writes bins.csv, summary.json and plot.tsv.
inline void cmd_benchmark(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  BenchmarkOptions options;
  options.bin_size = cfg.bin_size;
  options.exclude_identical = cfg.exclude_identical;
  options.regression = cfg.regression;
  const BenchmarkReport report = run_benchmark(benchmark_pairs(cfg, err), options);
  const std::string json = summary_json(report, cfg);
  out << json;
  if (!cfg.out_dir.empty()) {
    auto bins = detail::open_output(cfg, "bins.csv");
    write_bins_csv(bins, report);
    auto summary = detail::open_output(cfg, "summary.json");
    summary << json;
    auto plot = detail::open_output(cfg, "plot.tsv");
    write_plot_data(plot, report);
  }
}

/// Runs a subcommand, mapping failures to exit codes (0 ok, 1 I/O, 2
/// validation or domain error).
inline int run(std::string_view command, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (command == "entropy") {
      cmd_entropy(cfg, out, err);
    } else if (command == "ic") {
      cmd_ic(cfg, out, err);
    } else if (command == "semsim") {
      cmd_semsim(cfg, out, err);
    } else if (command == "benchmark") {
      cmd_benchmark(cfg, out, err);
    } else {
      err << "error: unknown command '" << command << "'\n";
      return 2;
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace dagic::cli
