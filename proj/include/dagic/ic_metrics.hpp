#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "dagic/annotations.hpp"
#include "dagic/bit_matrix.hpp"
#include "dagic/error.hpp"
#include "dagic/ontology.hpp"
#include "dagic/parallel.hpp"

namespace dagic {

/// Unit of the logarithms used for entropies. gIC and sIC are ratios and
/// do not depend on it.
enum class LogUnit { Bits, Nats };

inline double log_in(LogUnit unit, double v) noexcept {
  return unit == LogUnit::Bits ? std::log2(v) : std::log(v);
}

/// Ontology entropy under uniform first-term selection and uniform
/// second-term selection from the terms unrelated to the first (plus root).
struct EntropyReport {
  double total_bits = 0.0;
  double first_term_entropy = 0.0;
  std::vector<double> conditional_bits;  // log2 |Y_x|
  std::vector<std::size_t> y_sizes;      // |Y_x|
};

/// Shared kernel behind ontology_entropy, conditional_entropy_given and gic.
///
/// Keeps one "related" row per term: descendants | reflexive ancestors.
/// The second-term candidates of x given an excluded ancestor set A are
/// N \ (related(x) | A), plus the root (which related(x) always contains).
/// Their count is |N| - |related(x)| - |A \ related(x)| + 1; the last
/// popcount only touches the non-zero words of A.
class EntropyKernel {
 public:
  explicit EntropyKernel(const Ontology& o, LogUnit unit = LogUnit::Bits)
      : o_(&o), related_(o.size(), o.size()), related_count_(o.size()), log_(o.size() + 2, 0.0) {
    const std::size_t n = o.size();
    for (TermIndex x = 0; x < n; ++x) {
      auto row = related_.mutable_row(x);
      const auto anc = o.ancestors(x).words();
      const auto desc = o.descendants(x).words();
      for (std::size_t w = 0; w < row.size(); ++w) row[w] = anc[w] | desc[w];
      related_count_[x] = related_.row(x).count();
    }
    for (std::size_t k = 1; k < log_.size(); ++k) log_[k] = log_in(unit, static_cast<double>(k));
  }

  const Ontology& ontology() const noexcept { return *o_; }

  std::size_t y_size(TermIndex x) const { return o_->size() - related_count_.at(x) + 1; }

  /// H(X_z, Y_xz | z). z = root reproduces H(M) term for term.
  double conditional(TermIndex z) const {
    const Ontology& o = *o_;
    const std::size_t n = o.size();
    const TermIndex root = o.root();
    const BitRow excluded = o.ancestors(z);
    const auto ex = excluded.words();

    std::vector<std::size_t> active;
    for (std::size_t w = 0; w < ex.size(); ++w)
      if (ex[w] != 0) active.push_back(w);

    std::size_t x_count = 0;
    double sum = 0.0;
    for (TermIndex x = 0; x < n; ++x) {
      if (x != root && excluded.test(x)) continue;
      ++x_count;
      const auto rel = related_.row(x).words();
      std::size_t extra = 0;
      for (std::size_t w : active) extra += static_cast<std::size_t>(std::popcount(ex[w] & ~rel[w]));
      sum += log_[n - related_count_[x] - extra + 1];
    }
    return log_[x_count] + sum / static_cast<double>(x_count);
  }

 private:
  const Ontology* o_;
  BitMatrix related_;
  std::vector<std::size_t> related_count_;
  std::vector<double> log_;
};

/// Y_x: every term that is neither x, an ancestor of x nor a descendant of
/// x, together with the root. Sorted by index.
inline std::vector<TermIndex> candidate_second_terms(const Ontology& o, TermIndex x) {
  const BitRow anc = o.ancestors(x);
  const BitRow desc = o.descendants(x);
  std::vector<TermIndex> out;
  for (TermIndex y = 0; y < o.size(); ++y)
    if (y == o.root() || (!anc.test(y) && !desc.test(y))) out.push_back(y);
  return out;
}

inline EntropyReport ontology_entropy(const Ontology& o) {
  const EntropyKernel kernel(o);
  EntropyReport r;
  const std::size_t n = o.size();
  r.first_term_entropy = std::log2(static_cast<double>(n));
  r.y_sizes.resize(n);
  r.conditional_bits.resize(n);
  for (TermIndex x = 0; x < n; ++x) {
    r.y_sizes[x] = kernel.y_size(x);
    r.conditional_bits[x] = std::log2(static_cast<double>(r.y_sizes[x]));
  }
  r.total_bits = kernel.conditional(o.root());
  return r;
}

inline double conditional_entropy_given(const Ontology& o, TermIndex z) {
  (void)o.ancestors(z);  // range check
  return EntropyKernel(o).conditional(z);
}

inline constexpr std::size_t kDefaultOracleCap = 2000;

/// Independent check of ontology_entropy: recomputes relatedness by plain
/// graph traversal and sums -p log2 p over the materialized joint
/// distribution p(x, y) = 1/|N| * 1/|Y_x|.
inline double ontology_entropy_oracle(const Ontology& o, std::size_t cap = kDefaultOracleCap) {
  const std::size_t n = o.size();
  if (n > cap)
    throw Error(ErrorCode::TooLargeForOracle,
                std::to_string(n) + " terms exceeds the oracle cap of " + std::to_string(cap));

  const auto reach = [&](TermIndex start, bool upward) {
    std::vector<bool> seen(n, false);
    std::vector<TermIndex> stack{start};
    while (!stack.empty()) {
      const TermIndex t = stack.back();
      stack.pop_back();
      for (TermIndex next : upward ? o.parents(t) : o.children(t)) {
        if (!seen[next]) {
          seen[next] = true;
          stack.push_back(next);
        }
      }
    }
    return seen;
  };

  std::vector<double> joint;
  for (TermIndex x = 0; x < n; ++x) {
    const auto up = reach(x, true);
    const auto down = reach(x, false);
    std::vector<TermIndex> ys;
    for (TermIndex y = 0; y < n; ++y) {
      const bool related = y == x || up[y] || down[y];
      if (!related || y == o.root()) ys.push_back(y);
    }
    for (std::size_t k = 0; k < ys.size(); ++k)
      joint.push_back((1.0 / static_cast<double>(n)) * (1.0 / static_cast<double>(ys.size())));
  }
  double h = 0.0;
  for (double p : joint) h -= p * std::log2(p);
  return h;
}

enum class Metric { Gic, Ric, Sic };

inline std::string_view to_string(Metric m) noexcept {
  switch (m) {
    case Metric::Gic: return "gic";
    case Metric::Ric: return "ric";
    case Metric::Sic: return "sic";
  }
  return "?";
}

inline Metric parse_metric(std::string_view name) {
  if (name == "gic") return Metric::Gic;
  if (name == "ric") return Metric::Ric;
  if (name == "sic") return Metric::Sic;
  throw Error(ErrorCode::InvalidConfig, "metric must be gic, ric or sic, got '" + std::string(name) + "'");
}

/// Per-term information content. Undefined entries (rIC of never-annotated
/// terms) hold NaN in both raw and normalized and are skipped by the
/// normalizer.
struct ICTable {
  Metric metric = Metric::Gic;
  std::vector<double> raw;
  std::vector<double> normalized;
  std::vector<bool> defined;
  double max_raw = 0.0;
  /// Terms whose raw value fell outside [0, 1] for a ratio metric.
  std::vector<TermIndex> out_of_range;

  std::size_t size() const noexcept { return raw.size(); }
  bool is_defined(TermIndex t) const { return defined.at(t); }

  std::vector<TermIndex> undefined_terms() const {
    std::vector<TermIndex> out;
    for (TermIndex t = 0; t < defined.size(); ++t)
      if (!defined[t]) out.push_back(t);
    return out;
  }
};

/// Divides every defined raw value by the largest one. An all-zero table
/// normalizes to zeros.
inline void normalize(ICTable& table) {
  table.max_raw = 0.0;
  bool any = false;
  for (std::size_t t = 0; t < table.raw.size(); ++t) {
    if (!table.defined[t]) continue;
    table.max_raw = any ? std::max(table.max_raw, table.raw[t]) : table.raw[t];
    any = true;
  }
  table.normalized.assign(table.raw.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t t = 0; t < table.raw.size(); ++t) {
    if (!table.defined[t]) continue;
    table.normalized[t] = table.max_raw > 0.0 ? table.raw[t] / table.max_raw : 0.0;
  }
}

struct GicOptions {
  std::size_t workers = 1;  // 0 = hardware concurrency
  LogUnit unit = LogUnit::Bits;
};

/// gIC(z) = (H(M) - H(X_z, Y_xz | z)) / H(M) for every term, computed in
/// parallel over z. Output is independent of the worker count.
inline ICTable gic(const Ontology& o, const GicOptions& options = {}) {
  const std::size_t n = o.size();
  if (n < 2) throw Error(ErrorCode::DegenerateOntology, "gIC needs at least two terms (H(M) = 0)");
  const EntropyKernel kernel(o, options.unit);
  const double h = kernel.conditional(o.root());

  ICTable table;
  table.metric = Metric::Gic;
  table.raw.assign(n, 0.0);
  table.defined.assign(n, true);
  parallel_for(n, options.workers, [&](std::size_t z, std::size_t) {
    table.raw[z] = (h - kernel.conditional(z)) / h;
  });
  for (TermIndex z = 0; z < n; ++z)
    if (table.raw[z] < 0.0 || table.raw[z] > 1.0) table.out_of_range.push_back(z);
  normalize(table);
  return table;
}

inline ICTable gic(const Ontology& o, std::size_t workers) {
  GicOptions options;
  options.workers = workers;
  return gic(o, options);
}

/// sIC(t) = 1 - log(|descendants(t)| + 1) / log(|N|).
inline ICTable sic(const Ontology& o, LogUnit unit = LogUnit::Bits) {
  const std::size_t n = o.size();
  if (n < 2) throw Error(ErrorCode::DegenerateOntology, "sIC needs at least two terms (log |N| = 0)");
  ICTable table;
  table.metric = Metric::Sic;
  table.raw.resize(n);
  table.defined.assign(n, true);
  const double denom = log_in(unit, static_cast<double>(n));
  for (TermIndex t = 0; t < n; ++t) {
    const auto d = static_cast<double>(o.descendants(t).count());
    table.raw[t] = 1.0 - log_in(unit, d + 1.0) / denom;
  }
  normalize(table);
  return table;
}

/// rIC(t) = -log2 p(t) with p from the corpus' propagated counts.
inline ICTable ric(const Ontology& o, const AnnotationCorpus& c) {
  if (c.total == 0) throw Error(ErrorCode::EmptyCorpus, "rIC needs a non-empty corpus");
  const std::size_t n = o.size();
  ICTable table;
  table.metric = Metric::Ric;
  table.raw.assign(n, std::numeric_limits<double>::quiet_NaN());
  table.defined.assign(n, false);
  for (TermIndex t = 0; t < n; ++t) {
    const std::size_t count = c.propagated_count.at(t);
    if (count == 0) continue;
    table.defined[t] = true;
    table.raw[t] = count == c.total ? 0.0 : -std::log2(c.term_probability(t));
  }
  normalize(table);
  return table;
}

/// Number of edges along which a defined raw value decreases from parent to
/// child.
inline std::size_t count_monotonicity_violations(const Ontology& o, const ICTable& table) {
  std::size_t violations = 0;
  for (TermIndex c = 0; c < o.size(); ++c) {
    if (!table.defined[c]) continue;
    for (TermIndex p : o.parents(c))
      if (table.defined[p] && table.raw[c] < table.raw[p]) ++violations;
  }
  return violations;
}

}  // namespace dagic
