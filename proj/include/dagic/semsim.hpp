#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "dagic/annotations.hpp"
#include "dagic/error.hpp"
#include "dagic/ic_metrics.hpp"
#include "dagic/ontology.hpp"

namespace dagic {

struct TermSimilarity {
  double value = 0.0;
  TermIndex mica = 0;
};

/// Resnik similarity: the largest normalized IC among the common reflexive
/// ancestors of t1 and t2. Ties go to the smallest term id.
inline TermSimilarity term_similarity(const Ontology& o, const ICTable& ic, TermIndex t1, TermIndex t2) {
  const auto a = o.ancestors(t1).words();
  const auto b = o.ancestors(t2).words();
  bool found = false;
  TermSimilarity best;
  for (std::size_t w = 0; w < a.size(); ++w) {
    Word common = a[w] & b[w];
    while (common != 0) {
      const TermIndex t = w * kWordBits + static_cast<std::size_t>(std::countr_zero(common));
      common &= common - 1;
      if (!ic.defined[t]) continue;
      if (!found || ic.normalized[t] > best.value) {
        best = {ic.normalized[t], t};
        found = true;
      }
    }
  }
  if (!found)
    throw Error(ErrorCode::NoDefinedCommonAncestor,
                "no common ancestor of " + o.id(t1) + " and " + o.id(t2) + " has a defined IC");
  return best;
}

inline TermSimilarity term_similarity(const Ontology& o, const ICTable& ic, std::string_view t1,
                                      std::string_view t2) {
  return term_similarity(o, ic, o.index_of(t1), o.index_of(t2));
}

/// Best term pair between two annotation sets. term_a comes from the first
/// set, term_b from the second.
struct SetSimilarity {
  double simmax = 0.0;
  TermIndex term_a = 0;
  TermIndex term_b = 0;
  TermIndex mica = 0;
};

/// Maximum term_similarity over the cross product. Among equal values the
/// smallest (mica, min term, max term) wins, so swapping the two sets swaps
/// term_a/term_b and nothing else.
inline SetSimilarity set_similarity(const Ontology& o, const ICTable& ic, std::span<const TermIndex> terms_a,
                                    std::span<const TermIndex> terms_b) {
  if (terms_a.empty() || terms_b.empty()) throw Error(ErrorCode::EmptyTermSet, "empty annotation term set");
  const auto key = [](const SetSimilarity& s) {
    return std::tuple(s.mica, std::min(s.term_a, s.term_b), std::max(s.term_a, s.term_b));
  };
  SetSimilarity best;
  bool found = false;
  for (TermIndex ta : terms_a) {
    for (TermIndex tb : terms_b) {
      const TermSimilarity s = term_similarity(o, ic, ta, tb);
      const SetSimilarity cand{s.value, ta, tb, s.mica};
      if (!found || cand.simmax > best.simmax || (cand.simmax == best.simmax && key(cand) < key(best))) {
        best = cand;
        found = true;
      }
    }
  }
  return best;
}

struct GenePairSim {
  std::string gene_a;
  std::string gene_b;
  double simmax = 0.0;
  TermIndex term_a = 0;
  TermIndex term_b = 0;
  TermIndex mica = 0;
};

/// SimMax between two annotated genes.
inline GenePairSim gene_similarity(const Ontology& o, const ICTable& ic, const AnnotationCorpus& c,
                                   std::string_view g1, std::string_view g2) {
  const SetSimilarity s = set_similarity(o, ic, c.terms_of(g1), c.terms_of(g2));
  return {std::string(g1), std::string(g2), s.simmax, s.term_a, s.term_b, s.mica};
}

}  // namespace dagic
