#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dagic/bit_matrix.hpp"
#include "dagic/error.hpp"

namespace dagic {

/// Dense handle of a term, assigned in lexicographic order of term ids.
using TermIndex = std::size_t;

/// Subsumption edge, stored in the child -> parent direction.
struct Edge {
  std::string child;
  std::string parent;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable single-rooted DAG with precomputed closures.
///
/// ancestors(t) is reflexive (contains t and the root); descendants(t) is
/// strict. Both are dense bitset rows indexed by TermIndex.
class Ontology {
 public:
  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  TermIndex root() const noexcept { return root_; }

  const std::string& id(TermIndex t) const { return ids_.at(t); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }

  std::optional<TermIndex> find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  TermIndex index_of(std::string_view id) const {
    if (auto t = find(id)) return *t;
    throw Error(ErrorCode::UnknownTerm, "term '" + std::string(id) + "' is not in the ontology");
  }

  const std::vector<TermIndex>& parents(TermIndex t) const { return parents_.at(checked(t)); }
  const std::vector<TermIndex>& children(TermIndex t) const { return children_.at(checked(t)); }
  bool is_leaf(TermIndex t) const { return children(t).empty(); }

  BitRow ancestors(TermIndex t) const { return ancestors_.row(checked(t)); }
  BitRow descendants(TermIndex t) const { return descendants_.row(checked(t)); }
  std::size_t min_depth(TermIndex t) const { return depth_.at(checked(t)); }

  BitRow ancestors(std::string_view id) const { return ancestors(index_of(id)); }
  BitRow descendants(std::string_view id) const { return descendants(index_of(id)); }
  std::size_t min_depth(std::string_view id) const { return min_depth(index_of(id)); }

  /// Term ids of the set bits of `row`, in index (lexicographic) order.
  std::vector<std::string> ids_of(BitRow row) const {
    std::vector<std::string> out;
    row.for_each([&](std::size_t i) { out.push_back(ids_[i]); });
    return out;
  }

  /// Parents before children; ties by index.
  const std::vector<TermIndex>& topological_order() const noexcept { return topo_; }

  friend Ontology build_ontology(std::vector<std::string> terms, const std::vector<Edge>& edges);

 private:
  TermIndex checked(TermIndex t) const {
    if (t >= ids_.size())
      throw Error(ErrorCode::UnknownTerm, "term index " + std::to_string(t) + " out of range");
    return t;
  }

  std::vector<std::string> ids_;
  std::unordered_map<std::string, TermIndex> index_;
  std::vector<std::vector<TermIndex>> parents_;
  std::vector<std::vector<TermIndex>> children_;
  std::vector<TermIndex> topo_;
  BitMatrix ancestors_;
  BitMatrix descendants_;
  std::vector<std::size_t> depth_;
  std::size_t edge_count_ = 0;
  TermIndex root_ = 0;
};

/// Validates and builds an Ontology. Duplicate edges are collapsed.
inline Ontology build_ontology(std::vector<std::string> terms, const std::vector<Edge>& edges) {
  if (terms.empty()) throw Error(ErrorCode::EmptyOntology, "no terms given");

  Ontology o;
  std::sort(terms.begin(), terms.end());
  if (auto dup = std::adjacent_find(terms.begin(), terms.end()); dup != terms.end())
    throw Error(ErrorCode::DuplicateTerm, "term '" + *dup + "' listed twice");
  o.ids_ = std::move(terms);
  const std::size_t n = o.ids_.size();
  o.index_.reserve(n);
  for (TermIndex t = 0; t < n; ++t) o.index_.emplace(o.ids_[t], t);

  o.parents_.assign(n, {});
  o.children_.assign(n, {});
  for (const Edge& e : edges) {
    auto c = o.index_.find(e.child);
    auto p = o.index_.find(e.parent);
    if (c == o.index_.end() || p == o.index_.end()) {
      const std::string& missing = c == o.index_.end() ? e.child : e.parent;
      throw Error(ErrorCode::UnknownTermInEdge,
                  "edge " + e.child + " -> " + e.parent + " references unknown term '" + missing + "'");
    }
    o.parents_[c->second].push_back(p->second);
  }
  for (TermIndex t = 0; t < n; ++t) {
    auto& ps = o.parents_[t];
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    o.edge_count_ += ps.size();
    for (TermIndex p : ps) o.children_[p].push_back(t);
  }

  // Kahn's algorithm from the parentless terms downward.
  std::vector<std::size_t> pending(n);
  std::deque<TermIndex> ready;
  for (TermIndex t = 0; t < n; ++t) {
    pending[t] = o.parents_[t].size();
    if (pending[t] == 0) ready.push_back(t);
  }
  std::vector<TermIndex> roots(ready.begin(), ready.end());
  o.topo_.reserve(n);
  while (!ready.empty()) {
    const TermIndex t = ready.front();
    ready.pop_front();
    o.topo_.push_back(t);
    for (TermIndex c : o.children_[t])
      if (--pending[c] == 0) ready.push_back(c);
  }
  if (o.topo_.size() != n) {
    // Every unprocessed term keeps at least one unprocessed parent, so
    // walking such parents must revisit a term.
    TermIndex start = 0;
    while (pending[start] == 0) ++start;
    std::vector<std::size_t> seen_at(n, std::numeric_limits<std::size_t>::max());
    std::vector<TermIndex> walk;
    TermIndex cur = start;
    while (seen_at[cur] == std::numeric_limits<std::size_t>::max()) {
      seen_at[cur] = walk.size();
      walk.push_back(cur);
      for (TermIndex p : o.parents_[cur])
        if (pending[p] != 0) {
          cur = p;
          break;
        }
    }
    std::string cycle;
    for (std::size_t i = seen_at[cur]; i < walk.size(); ++i) cycle += o.ids_[walk[i]] + " -> ";
    cycle += o.ids_[cur];
    throw Error(ErrorCode::CycleDetected, "cycle " + cycle);
  }

  if (roots.empty()) throw Error(ErrorCode::NoRoot, "every term has a parent");
  if (roots.size() > 1) {
    std::string list;
    for (TermIndex r : roots) list += (list.empty() ? "" : ", ") + o.ids_[r];
    throw Error(ErrorCode::MultipleRoots, std::to_string(roots.size()) + " parentless terms: " + list);
  }
  o.root_ = roots.front();

  o.ancestors_ = BitMatrix(n, n);
  for (TermIndex t : o.topo_) {
    o.ancestors_.set(t, t);
    for (TermIndex p : o.parents_[t]) o.ancestors_.or_row(t, p);
  }
  o.descendants_ = BitMatrix(n, n);
  for (auto it = o.topo_.rbegin(); it != o.topo_.rend(); ++it) {
    for (TermIndex c : o.children_[*it]) {
      o.descendants_.or_row(*it, c);
      o.descendants_.set(*it, c);
    }
  }

  o.depth_.assign(n, std::numeric_limits<std::size_t>::max());
  o.depth_[o.root_] = 0;
  std::deque<TermIndex> frontier{o.root_};
  while (!frontier.empty()) {
    const TermIndex t = frontier.front();
    frontier.pop_front();
    for (TermIndex c : o.children_[t]) {
      if (o.depth_[c] == std::numeric_limits<std::size_t>::max()) {
        o.depth_[c] = o.depth_[t] + 1;
        frontier.push_back(c);
      }
    }
  }
  // Unreachable from a single acyclic root is impossible; kept as a guard.
  for (TermIndex t = 0; t < n; ++t)
    if (o.depth_[t] == std::numeric_limits<std::size_t>::max())
      throw Error(ErrorCode::UnreachableTerms, o.ids_[t] + " is not reachable from " + o.ids_[o.root_]);
  return o;
}

}  // namespace dagic
