#pragma once

// Test-only helpers: fixture graphs, a random DAG generator and naive
// set-based oracles that never touch the bitset closures.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dagic/ontology.hpp"

namespace dagic::testing {

struct Graph {
  std::vector<std::string> terms;
  std::vector<Edge> edges;
};

inline std::string data_path(const std::string& name) { return std::string(DAGIC_TEST_DATA) + "/" + name; }

inline Graph chain(std::size_t n) {
  Graph g;
  for (std::size_t i = 0; i < n; ++i) {
    g.terms.push_back("C" + std::string(i < 10 ? "0" : "") + std::to_string(i));
    if (i > 0) g.edges.push_back({g.terms[i], g.terms[i - 1]});
  }
  return g;
}

/// r -> {a, b}
inline Graph star2() { return {{"r", "a", "b"}, {{"a", "r"}, {"b", "r"}}}; }

/// r -> a, r -> b, a -> c, b -> c
inline Graph diamond() { return {{"r", "a", "b", "c"}, {{"a", "r"}, {"b", "r"}, {"c", "a"}, {"c", "b"}}}; }

inline Ontology build(const Graph& g) { return build_ontology(g.terms, g.edges); }

/// Random single-rooted DAG: topological position 0 is the root; every
/// later position gets one parent among earlier positions and extra ones
/// with probability `density`. Ids are shuffled so that index order and
/// topology are unrelated.
inline Graph random_dag(std::mt19937_64& rng, std::size_t n, double density) {
  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), 0);
  std::shuffle(label.begin(), label.end(), rng);
  const auto name = [&](std::size_t pos) {
    return "G" + std::string(label[pos] < 10 ? "0" : "") + std::to_string(label[pos]);
  };
  Graph g;
  for (std::size_t i = 0; i < n; ++i) g.terms.push_back(name(i));
  std::bernoulli_distribution extra(density);
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    g.edges.push_back({name(i), name(pick(rng))});
    for (std::size_t j = 0; j < i; ++j)
      if (extra(rng)) g.edges.push_back({name(i), name(j)});
  }
  return g;
}

/// Adjacency-list reachability straight from the edge list.
struct NaiveClosure {
  std::map<std::string, std::set<std::string>> ancestors;    // reflexive
  std::map<std::string, std::set<std::string>> descendants;  // strict
  std::map<std::string, std::size_t> depth;
  std::string root;

  explicit NaiveClosure(const Graph& g) {
    std::map<std::string, std::vector<std::string>> up, down;
    for (const auto& t : g.terms) {
      up[t];
      down[t];
    }
    for (const auto& e : g.edges) {
      up[e.child].push_back(e.parent);
      down[e.parent].push_back(e.child);
    }
    for (const auto& t : g.terms) {
      if (up[t].empty()) root = t;
      std::set<std::string> seen{t};
      std::vector<std::string> stack{t};
      while (!stack.empty()) {
        auto cur = stack.back();
        stack.pop_back();
        for (const auto& p : up[cur])
          if (seen.insert(p).second) stack.push_back(p);
      }
      ancestors[t] = seen;
    }
    for (const auto& t : g.terms)
      for (const auto& a : ancestors[t])
        if (a != t) descendants[a].insert(t);
    for (const auto& t : g.terms) descendants[t];
    // depth by repeated relaxation
    for (const auto& t : g.terms) depth[t] = t == root ? 0 : g.terms.size() + 1;
    for (std::size_t round = 0; round < g.terms.size(); ++round)
      for (const auto& e : g.edges) depth[e.child] = std::min(depth[e.child], depth[e.parent] + 1);
  }

  std::set<std::string> related(const std::string& x) const {
    auto s = ancestors.at(x);
    s.insert(descendants.at(x).begin(), descendants.at(x).end());
    return s;
  }

  /// log2|X_z| + mean over X_z of log2|Y_xz|, by explicit set construction.
  double conditional_entropy(const std::string& z) const {
    const auto& excl = ancestors.at(z);
    std::vector<std::string> xs;
    for (const auto& [t, _] : ancestors)
      if (t == root || !excl.contains(t)) xs.push_back(t);
    double sum = 0.0;
    for (const auto& x : xs) {
      auto rel = related(x);
      rel.insert(excl.begin(), excl.end());
      std::size_t ys = 0;
      for (const auto& [y, _] : ancestors)
        if (y == root || !rel.contains(y)) ++ys;
      sum += std::log2(static_cast<double>(ys));
    }
    return std::log2(static_cast<double>(xs.size())) + sum / static_cast<double>(xs.size());
  }

  double entropy() const { return conditional_entropy(root); }
};

}  // namespace dagic::testing
