// E003 against the exhaustive-path oracle over whole families of graphs.
#pragma once

#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fairmodel/validator.hpp"
#include "support/oracles.hpp"

namespace cycles {

using Edges = std::vector<std::pair<std::size_t, std::size_t>>;

struct Tally {
  std::size_t graphs = 0;
  std::size_t cyclic = 0;
  std::size_t mismatches = 0;

  Tally& operator+=(const Tally& o) {
    graphs += o.graphs;
    cyclic += o.cyclic;
    mismatches += o.mismatches;
    return *this;
  }
};

inline std::string node(std::size_t i) { return "n" + std::to_string(i); }

/// Intentions n0..n(n-1) of mixed kinds joined by Refines.
inline fairmodel::Model refinement_graph(std::size_t n, const Edges& edges, std::mt19937* rng = nullptr) {
  using fairmodel::ElementKind;
  static const ElementKind kinds[] = {ElementKind::Goal, ElementKind::Value, ElementKind::Assumption};
  fairmodel::Model m("g");
  for (std::size_t i = 0; i < n; ++i) {
    fairmodel::Element e;
    e.id = node(i);
    e.kind = rng ? kinds[oracle::pick(*rng, 3)] : ElementKind::Goal;
    e.name = e.id;
    m = fairmodel::add_element(std::move(m), e);
  }
  for (auto [s, t] : edges) m = fairmodel::add_link(std::move(m), fairmodel::LinkKind::Refines, node(s), node(t));
  return m;
}

inline std::set<std::set<std::string>> reported(const fairmodel::Model& m) {
  std::set<std::set<std::string>> groups;
  for (const auto& d : fairmodel::validate(m)) {
    if (d.code == fairmodel::DiagnosticCode::E003) groups.emplace(d.elements.begin(), d.elements.end());
  }
  return groups;
}

inline oracle::Graph graph_of(std::size_t n, const Edges& edges) {
  oracle::Graph g;
  for (std::size_t i = 0; i < n; ++i) g[node(i)];
  for (auto [s, t] : edges) g[node(s)].push_back(node(t));
  return g;
}

inline void compare(std::size_t n, const Edges& edges, std::mt19937* rng, Tally& tally) {
  auto expected = oracle::cyclic_groups(graph_of(n, edges));
  ++tally.graphs;
  tally.cyclic += !expected.empty();
  tally.mismatches += reported(refinement_graph(n, edges, rng)) != expected;
}

/// Every directed graph on n nodes (with or without self-loops).
inline Tally enumerate_all(std::size_t n, bool self_loops) {
  Edges slots;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (s != t || self_loops) slots.emplace_back(s, t);
    }
  }
  Tally tally;
  for (std::size_t mask = 0; mask < (std::size_t{1} << slots.size()); ++mask) {
    Edges edges;
    for (std::size_t b = 0; b < slots.size(); ++b) {
      if (mask & (std::size_t{1} << b)) edges.push_back(slots[b]);
    }
    compare(n, edges, nullptr, tally);
  }
  return tally;
}

inline Tally random_graphs(std::mt19937& rng, std::size_t count, std::size_t max_nodes) {
  Tally tally;
  for (std::size_t round = 0; round < count; ++round) {
    std::size_t n = 1 + oracle::pick(rng, max_nodes);
    double density = std::uniform_real_distribution<double>(0.05, 0.5)(rng);
    Edges edges;
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t t = 0; t < n; ++t) {
        if ((s != t || oracle::coin(rng, 0.2)) && oracle::coin(rng, density)) edges.emplace_back(s, t);
      }
    }
    compare(n, edges, &rng, tally);
  }
  return tally;
}

}  // namespace cycles
