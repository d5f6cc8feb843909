#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dagic/error.hpp"
#include "dagic/ontology.hpp"
#include "dagic/text.hpp"

namespace dagic {

enum class AnnotationFormat { Tsv, Gaf };

inline AnnotationFormat parse_annotation_format(std::string_view name) {
  if (name == "tsv") return AnnotationFormat::Tsv;
  if (name == "gaf") return AnnotationFormat::Gaf;
  throw Error(ErrorCode::UnknownFormat, "annotation format must be 'tsv' or 'gaf', got '" +
                                            std::string(name) + "'");
}

struct Annotation {
  std::string gene;
  std::string term;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

/// Raw (gene, term) pairs in file order; duplicates are preserved.
///
/// TSV: exactly two tab-separated columns, no header.
/// GAF 2.x: '!' lines are comments; column 2 is the object id and column 5
/// the term id. Qualifiers and evidence codes are not interpreted.
inline std::vector<Annotation> parse_annotations(std::istream& in, AnnotationFormat format) {
  constexpr std::size_t kGafMinColumns = 15;
  std::vector<Annotation> out;
  std::string line;
  std::size_t lineno = 0;
  while (text::read_line(in, line)) {
    ++lineno;
    if (!text::valid_utf8(line))
      throw Error(ErrorCode::InvalidEncoding, "invalid UTF-8 byte sequence", lineno);
    if (text::trim(line).empty()) continue;
    const auto cols = text::split(line, '\t');
    if (format == AnnotationFormat::Tsv) {
      if (cols.size() != 2)
        throw Error(ErrorCode::MalformedLine,
                    "expected 2 tab-separated columns, found " + std::to_string(cols.size()), lineno);
      const auto gene = text::trim(cols[0]);
      const auto term = text::trim(cols[1]);
      if (gene.empty() || term.empty()) throw Error(ErrorCode::MalformedLine, "empty column", lineno);
      out.push_back({std::string(gene), std::string(term)});
    } else {
      if (line.front() == '!') continue;
      if (cols.size() < kGafMinColumns)
        throw Error(ErrorCode::MalformedLine,
                    "GAF line has " + std::to_string(cols.size()) + " columns, need at least " +
                        std::to_string(kGafMinColumns),
                    lineno);
      const auto gene = text::trim(cols[1]);
      const auto term = text::trim(cols[4]);
      if (gene.empty() || term.empty())
        throw Error(ErrorCode::MalformedLine, "empty object id or term id", lineno);
      out.push_back({std::string(gene), std::string(term)});
    }
  }
  return out;
}

inline std::vector<Annotation> parse_annotations_file(const std::filesystem::path& path,
                                                      AnnotationFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open annotation file " + path.string());
  return parse_annotations(in, format);
}

/// How propagated frequencies are counted.
enum class CountMode {
  Gene,   ///< a gene adds at most 1 to any term
  Event,  ///< every distinct (gene, term) annotation adds 1 to each of its ancestors
};

/// Where the minimum-depth filter acts.
enum class DepthFilterStage {
  Direct,            ///< filter direct annotations, then propagate
  AfterPropagation,  ///< frequencies from all annotations; only similarity term sets are filtered
};

struct CorpusOptions {
  std::size_t min_depth = 0;
  CountMode count_mode = CountMode::Gene;
  DepthFilterStage depth_stage = DepthFilterStage::Direct;
};

/// Gene -> term-set mapping with propagated term frequencies.
struct AnnotationCorpus {
  std::map<std::string, std::vector<TermIndex>> gene_terms;  // sorted, deduplicated
  std::vector<std::size_t> direct_count;
  std::vector<std::size_t> propagated_count;
  std::size_t total = 0;
  std::size_t dropped_unknown = 0;
  std::size_t dropped_shallow = 0;

  double term_probability(TermIndex t) const {
    if (t >= propagated_count.size())
      throw Error(ErrorCode::UnknownTerm, "term index " + std::to_string(t) + " out of range");
    if (total == 0) throw Error(ErrorCode::EmptyCorpus, "corpus has no annotations");
    return static_cast<double>(propagated_count[t]) / static_cast<double>(total);
  }

  const std::vector<TermIndex>& terms_of(std::string_view gene) const {
    auto it = gene_terms.find(std::string(gene));
    if (it == gene_terms.end())
      throw Error(ErrorCode::UnknownGene, "gene '" + std::string(gene) + "' has no retained annotations");
    return it->second;
  }
};

inline AnnotationCorpus build_corpus(const std::vector<Annotation>& pairs, const Ontology& o,
                                     const CorpusOptions& options) {
  const std::size_t n = o.size();
  AnnotationCorpus c;
  c.direct_count.assign(n, 0);
  c.propagated_count.assign(n, 0);

  // Counting basis: the set used for frequencies.
  std::map<std::string, std::set<TermIndex>> counted;
  std::map<std::string, std::set<TermIndex>> retained;
  for (const Annotation& a : pairs) {
    const auto t = o.find(a.term);
    if (!t) {
      ++c.dropped_unknown;
      continue;
    }
    const bool deep = o.min_depth(*t) >= options.min_depth;
    if (!deep) ++c.dropped_shallow;
    if (deep) retained[a.gene].insert(*t);
    if (deep || options.depth_stage == DepthFilterStage::AfterPropagation) counted[a.gene].insert(*t);
  }
  if (retained.empty()) throw Error(ErrorCode::EmptyCorpus, "no annotations survived filtering");

  for (auto& [gene, ts] : retained) c.gene_terms.emplace(gene, std::vector<TermIndex>(ts.begin(), ts.end()));

  std::vector<Word> closure(words_for(n));
  for (const auto& [gene, ts] : counted) {
    std::fill(closure.begin(), closure.end(), Word{0});
    for (TermIndex t : ts) {
      ++c.direct_count[t];
      const auto anc = o.ancestors(t).words();
      if (options.count_mode == CountMode::Gene) {
        for (std::size_t w = 0; w < closure.size(); ++w) closure[w] |= anc[w];
      } else {
        o.ancestors(t).for_each([&](std::size_t u) { ++c.propagated_count[u]; });
        ++c.total;
      }
    }
    if (options.count_mode == CountMode::Gene) {
      BitRow(closure, n).for_each([&](std::size_t u) { ++c.propagated_count[u]; });
      ++c.total;
    }
  }
  return c;
}

inline AnnotationCorpus build_corpus(const std::vector<Annotation>& pairs, const Ontology& o,
                                     std::size_t min_depth) {
  CorpusOptions options;
  options.min_depth = min_depth;
  return build_corpus(pairs, o, options);
}

}  // namespace dagic
