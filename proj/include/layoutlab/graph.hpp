#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace layoutlab {

struct NodeRecord {
  std::string id;
  double radius = 6.0;
  double weight = 1.0;

  friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

struct EdgeRecord {
  std::size_t source = 0;
  std::size_t target = 0;
  double weight = 1.0;
  std::optional<double> rest_length;

  bool is_self_loop() const { return source == target; }

  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

/// Undirected multigraph with stable string ids. Node order is the row order
/// of every coordinate matrix produced for the graph.
///
/// Construction never throws on invariant violations so that `validate` can
/// report them all; callers that need a usable graph should check it.
class Graph {
 public:
  Graph() = default;
  Graph(std::vector<NodeRecord> nodes, std::vector<EdgeRecord> edges);

  const std::vector<NodeRecord>& nodes() const { return nodes_; }
  const std::vector<EdgeRecord>& edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return nodes_.empty(); }

  /// Index of the first node with this id.
  std::optional<std::size_t> find(std::string_view id) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<NodeRecord> nodes_;
  std::vector<EdgeRecord> edges_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// `source target [weight]` per line, separated by whitespace or commas.
/// Lines whose first non-blank character is `#` are comments.
Graph parse_edgelist(std::string_view text);

/// `{"nodes":[{"id",radius?,weight?}],"edges":[{"source","target",weight?,length?}]}`
Graph parse_json_graph(std::string_view text);

/// Inverse of parse_json_graph; defaults are written out explicitly.
std::string to_json_graph(const Graph& graph);

/// Every violated invariant, one message each. Empty means valid.
std::vector<std::string> validate(const Graph& graph);

struct Components {
  std::vector<std::size_t> labels;
  std::size_t count = 0;
};

/// Undirected components, numbered in order of their lowest node index.
Components connected_components(const Graph& graph);

/// Endpoint counts; a self-loop contributes 2.
std::vector<std::size_t> degrees(const Graph& graph);

}  // namespace layoutlab
