#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "cnp/graph.hpp"

namespace cnp::testing {

using Edges = std::vector<std::pair<NodeId, NodeId>>;

inline Graph make_graph(NodeId n, const Edges& edges) { return Graph::from_edges(n, edges); }

inline Graph path_graph(NodeId n) {
  Edges e;
  for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return make_graph(n, e);
}

inline Graph star_graph(NodeId leaves) {
  Edges e;
  for (NodeId i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return make_graph(leaves + 1, e);
}

inline Graph complete_graph(NodeId n) {
  Edges e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return make_graph(n, e);
}

inline Graph erdos_renyi(NodeId n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Edges e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (coin(rng)) e.emplace_back(i, j);
  return make_graph(n, e);
}

/// G(n, m) with exactly m distinct edges.
inline Graph erdos_renyi_m(NodeId n, std::int64_t m, std::mt19937_64& rng) {
  std::uniform_int_distribution<NodeId> pick(0, n - 1);
  std::set<std::pair<NodeId, NodeId>> seen;
  while (static_cast<std::int64_t>(seen.size()) < m) {
    NodeId a = pick(rng), b = pick(rng);
    if (a == b) continue;
    seen.emplace(std::min(a, b), std::max(a, b));
  }
  return make_graph(n, Edges(seen.begin(), seen.end()));
}

/// Preferential attachment, each new node linking to `links` earlier nodes.
inline Graph barabasi_albert(NodeId n, int links, std::mt19937_64& rng) {
  Edges e;
  std::vector<NodeId> ends;
  for (NodeId v = 1; v <= links && v < n; ++v) {
    e.emplace_back(0, v);
    ends.push_back(0);
    ends.push_back(v);
  }
  for (NodeId v = links + 1; v < n; ++v) {
    std::set<NodeId> targets;
    while (static_cast<int>(targets.size()) < links)
      targets.insert(ends[std::uniform_int_distribution<std::size_t>(0, ends.size() - 1)(rng)]);
    for (NodeId t : targets) {
      e.emplace_back(t, v);
      ends.push_back(t);
      ends.push_back(v);
    }
  }
  return make_graph(n, e);
}

/// Component sizes of G[V \ removed] by union-find over the edge list.
inline std::vector<std::int64_t> reference_sizes(const Graph& g, const std::vector<NodeId>& removed) {
  const auto n = static_cast<std::size_t>(g.num_nodes());
  std::vector<bool> gone(n, false);
  for (NodeId v : removed) gone[v] = true;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [u, v] : g.edges())
    if (!gone[u] && !gone[v]) parent[find(u)] = find(v);
  std::vector<std::int64_t> count(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    if (!gone[v]) ++count[find(v)];
  std::vector<std::int64_t> sizes;
  for (auto c : count)
    if (c > 0) sizes.push_back(c);
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

inline std::uint64_t reference_pairwise(const Graph& g, const std::vector<NodeId>& removed) {
  std::uint64_t f = 0;
  for (auto s : reference_sizes(g, removed)) f += static_cast<std::uint64_t>(s * (s - 1) / 2);
  return f;
}

inline std::uint64_t reference_excess(const Graph& g, const std::vector<NodeId>& removed, std::int64_t cap) {
  std::uint64_t f = 0;
  for (auto s : reference_sizes(g, removed)) f += static_cast<std::uint64_t>(std::max<std::int64_t>(s - cap, 0));
  return f;
}

/// Exhaustive minimum of `cost` over k-subsets, by bitmask (n <= 20).
template <class Cost>
std::uint64_t reference_optimum(const Graph& g, int k, Cost cost) {
  const int n = g.num_nodes();
  std::uint64_t best = UINT64_MAX;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<NodeId> s;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1u) s.push_back(v);
    best = std::min(best, cost(g, s));
  }
  return best;
}

}  // namespace cnp::testing
