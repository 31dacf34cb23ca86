#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cnp {

using NodeId = std::int32_t;

/// Marker stored in a labeling for nodes that belong to the deleted set.
inline constexpr int kInS = -1;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class RangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable undirected simple graph in compressed adjacency form.
/// Neighbor lists are sorted and free of duplicates and self-loops.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph on nodes 0..n-1. Duplicate edges are collapsed;
  /// self-loops must have been filtered by the caller.
  static Graph from_edges(NodeId n, std::span<const std::pair<NodeId, NodeId>> edges);

  NodeId num_nodes() const { return static_cast<NodeId>(offsets_.empty() ? 0 : offsets_.size() - 1); }
  std::int64_t num_edges() const { return static_cast<std::int64_t>(adjacency_.size() / 2); }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  NodeId degree(NodeId v) const { return static_cast<NodeId>(offsets_[v + 1] - offsets_[v]); }

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::int64_t> offsets_;
  std::vector<NodeId> adjacency_;
};

struct LoadOptions {
  bool one_indexed = false;
  // Reject self-loops instead of dropping them.
  bool strict = false;
  std::function<void(const std::string&)> warn;
};

/// Reads an edge-list instance: optional comment lines starting with '#' or
/// 'c', a header line `n m`, then m lines `u v`.
Graph load_graph(std::istream& in, const LoadOptions& options = {});
Graph load_graph_file(const std::string& path, const LoadOptions& options = {});

/// Writes the graph in the same format `load_graph` reads (0-based ids).
void write_graph(std::ostream& out, const Graph& graph);

/// 2m / (n (n + 1)); small values mean sparse.
double sparsity_beta(const Graph& graph);

struct ComponentLabeling {
  std::vector<int> label;  // kInS for deleted nodes
  std::vector<std::int64_t> sizes;
  int count = 0;
};

/// Connected components of the subgraph induced by nodes with in_s[v] == 0.
ComponentLabeling components_of(const Graph& graph, std::span<const std::uint8_t> in_s);

}  // namespace cnp
