#include "cnp/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

namespace cnp {

Graph Graph::from_edges(NodeId n, std::span<const std::pair<NodeId, NodeId>> edges) {
  if (n < 0) throw RangeError("negative node count");
  std::vector<std::pair<NodeId, NodeId>> arcs;
  arcs.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw RangeError("edge endpoint out of range");
    if (u == v) throw RangeError("self-loop on node " + std::to_string(u));
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  Graph g;
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  g.adjacency_.reserve(arcs.size());
  for (auto [u, v] : arcs) {
    ++g.offsets_[u + 1];
    g.adjacency_.push_back(v);
  }
  for (NodeId v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  return g;
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(adjacency_.size() / 2);
  for (NodeId u = 0; u < num_nodes(); ++u)
    for (NodeId v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::int64_t parse_int(std::string_view token, std::size_t line_no) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(line_no, "expected an integer, got '" + std::string(token) + "'");
  return value;
}

bool is_comment(const std::vector<std::string_view>& tokens) {
  return tokens.empty() || tokens.front().front() == '#' || tokens.front().front() == 'c';
}

}  // namespace

Graph load_graph(std::istream& in, const LoadOptions& options) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::int64_t n = 0, m = 0;
  std::vector<std::pair<NodeId, NodeId>> edges;
  const std::int64_t shift = options.one_indexed ? 1 : 0;

  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = tokenize(line);
    if (is_comment(tokens)) continue;
    if (tokens.size() != 2)
      throw ParseError(line_no, "expected two integers, found " + std::to_string(tokens.size()) + " tokens");
    std::int64_t a = parse_int(tokens[0], line_no);
    std::int64_t b = parse_int(tokens[1], line_no);
    if (!have_header) {
      if (a < 0 || b < 0) throw ParseError(line_no, "negative header value");
      if (a > INT32_MAX) throw RangeError("node count exceeds supported range");
      n = a;
      m = b;
      have_header = true;
      edges.reserve(static_cast<std::size_t>(m));
      continue;
    }
    if (static_cast<std::int64_t>(edges.size()) >= m)
      throw ParseError(line_no, "more edge lines than the declared " + std::to_string(m));
    std::int64_t u = a - shift, v = b - shift;
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw RangeError("line " + std::to_string(line_no) + ": node id out of range [" + std::to_string(shift) +
                       ", " + std::to_string(n - 1 + shift) + "]");
    if (u == v) {
      if (options.strict) throw ParseError(line_no, "self-loop on node " + std::to_string(a));
      if (options.warn) options.warn("line " + std::to_string(line_no) + ": dropped self-loop on node " + std::to_string(a));
      // dropped lines still count toward the declared m
      edges.emplace_back(-1, -1);
      continue;
    }
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  if (!have_header) throw ParseError(line_no, "missing 'n m' header");
  if (static_cast<std::int64_t>(edges.size()) != m)
    throw ParseError(line_no, "declared " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  std::erase_if(edges, [](const auto& e) { return e.first < 0; });
  return Graph::from_edges(static_cast<NodeId>(n), edges);
}

Graph load_graph_file(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
  return load_graph(in, options);
}

void write_graph(std::ostream& out, const Graph& graph) {
  out << graph.num_nodes() << ' ' << graph.num_edges() << '\n';
  for (auto [u, v] : graph.edges()) out << u << ' ' << v << '\n';
}

double sparsity_beta(const Graph& graph) {
  const double n = graph.num_nodes();
  if (n == 0) return 0.0;
  return 2.0 * static_cast<double>(graph.num_edges()) / (n * (n + 1.0));
}

ComponentLabeling components_of(const Graph& graph, std::span<const std::uint8_t> in_s) {
  const NodeId n = graph.num_nodes();
  if (static_cast<NodeId>(in_s.size()) != n) throw std::invalid_argument("mask length must equal node count");
  ComponentLabeling result;
  result.label.assign(static_cast<std::size_t>(n), kInS);
  std::vector<NodeId> stack;
  constexpr int kUnvisited = -2;
  for (NodeId v = 0; v < n; ++v)
    if (!in_s[v]) result.label[v] = kUnvisited;

  for (NodeId root = 0; root < n; ++root) {
    if (result.label[root] != kUnvisited) continue;
    const int id = result.count++;
    std::int64_t size = 0;
    result.label[root] = id;
    stack.push_back(root);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      ++size;
      for (NodeId w : graph.neighbors(v)) {
        if (result.label[w] == kUnvisited) {
          result.label[w] = id;
          stack.push_back(w);
        }
      }
    }
    result.sizes.push_back(size);
  }
  return result;
}

}  // namespace cnp
