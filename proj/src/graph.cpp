#include "layoutlab/graph.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "layoutlab/error.hpp"

namespace layoutlab {

namespace {

using ordered_json = nlohmann::ordered_json;

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

std::optional<double> parse_double(std::string_view s) {
  double value = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_sep(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::string element(std::string_view array, std::size_t i) {
  return std::string(array) + "[" + std::to_string(i) + "]";
}

const nlohmann::json& require(const nlohmann::json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(where + ": missing \"" + key + "\"");
  return *it;
}

std::string require_string(const nlohmann::json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_string()) throw ValidationError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

std::optional<double> optional_positive(const nlohmann::json& obj, const char* key,
                                        const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) return std::nullopt;
  if (!it->is_number()) throw ValidationError(where + "." + key + ": expected a number");
  double v = it->get<double>();
  if (!positive_finite(v)) throw ValidationError(where + "." + key + ": must be positive and finite");
  return v;
}

}  // namespace

Graph::Graph(std::vector<NodeRecord> nodes, std::vector<EdgeRecord> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  index_.reserve(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) index_.try_emplace(nodes_[i].id, i);
}

std::optional<std::size_t> Graph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Graph parse_edgelist(std::string_view text) {
  std::vector<NodeRecord> nodes;
  std::vector<EdgeRecord> edges;
  std::unordered_map<std::string, std::size_t> index;

  auto intern = [&](std::string_view id) {
    auto [it, inserted] = index.try_emplace(std::string(id), nodes.size());
    if (inserted) nodes.push_back(NodeRecord{std::string(id)});
    return it->second;
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;

    auto fields = split_fields(line);
    if (fields.empty() || fields.front().front() == '#') continue;
    if (fields.size() < 2) throw ParseError(line_no, "expected 'source target [weight]'");
    if (fields.size() > 3) throw ParseError(line_no, "too many fields");

    EdgeRecord edge;
    if (fields.size() == 3) {
      auto w = parse_double(fields[2]);
      if (!w) throw ParseError(line_no, "weight '" + std::string(fields[2]) + "' is not a number");
      if (!positive_finite(*w)) throw ParseError(line_no, "weight must be positive and finite");
      edge.weight = *w;
    }
    edge.source = intern(fields[0]);
    edge.target = intern(fields[1]);
    edges.push_back(edge);
  }
  return Graph(std::move(nodes), std::move(edges));
}

Graph parse_json_graph(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("graph: expected a JSON object");

  const auto& jnodes = require(doc, "nodes", "graph");
  const auto& jedges = require(doc, "edges", "graph");
  if (!jnodes.is_array()) throw ValidationError("graph.nodes: expected an array");
  if (!jedges.is_array()) throw ValidationError("graph.edges: expected an array");

  std::vector<NodeRecord> nodes;
  std::unordered_map<std::string, std::size_t> index;
  nodes.reserve(jnodes.size());
  for (std::size_t i = 0; i < jnodes.size(); ++i) {
    const auto where = element("nodes", i);
    const auto& jn = jnodes[i];
    if (!jn.is_object()) throw ValidationError(where + ": expected an object");
    NodeRecord node;
    node.id = require_string(jn, "id", where);
    if (node.id.empty()) throw ValidationError(where + ": id must be nonempty");
    if (auto r = optional_positive(jn, "radius", where)) node.radius = *r;
    if (auto w = optional_positive(jn, "weight", where)) node.weight = *w;
    if (!index.try_emplace(node.id, i).second)
      throw ValidationError(where + ": duplicate id \"" + node.id + "\"");
    nodes.push_back(std::move(node));
  }

  std::vector<EdgeRecord> edges;
  edges.reserve(jedges.size());
  for (std::size_t i = 0; i < jedges.size(); ++i) {
    const auto where = element("edges", i);
    const auto& je = jedges[i];
    if (!je.is_object()) throw ValidationError(where + ": expected an object");
    auto resolve = [&](const char* key) {
      auto id = require_string(je, key, where);
      auto it = index.find(id);
      if (it == index.end())
        throw ValidationError(where + "." + key + ": unknown node id \"" + id + "\"");
      return it->second;
    };
    EdgeRecord edge;
    edge.source = resolve("source");
    edge.target = resolve("target");
    if (auto w = optional_positive(je, "weight", where)) edge.weight = *w;
    edge.rest_length = optional_positive(je, "length", where);
    edges.push_back(edge);
  }
  return Graph(std::move(nodes), std::move(edges));
}

std::string to_json_graph(const Graph& graph) {
  ordered_json doc;
  auto& jnodes = doc["nodes"] = ordered_json::array();
  for (const auto& n : graph.nodes())
    jnodes.push_back({{"id", n.id}, {"radius", n.radius}, {"weight", n.weight}});
  auto& jedges = doc["edges"] = ordered_json::array();
  for (const auto& e : graph.edges()) {
    ordered_json je{{"source", graph.nodes().at(e.source).id},
                    {"target", graph.nodes().at(e.target).id},
                    {"weight", e.weight}};
    if (e.rest_length) je["length"] = *e.rest_length;
    jedges.push_back(std::move(je));
  }
  return doc.dump();
}

std::vector<std::string> validate(const Graph& graph) {
  std::vector<std::string> violations;
  const auto& nodes = graph.nodes();
  std::unordered_map<std::string_view, std::size_t> seen;

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    const std::string name =
        n.id.empty() ? "node " + std::to_string(i) : "node '" + n.id + "'";
    if (n.id.empty()) violations.push_back(name + ": empty id");
    else if (!seen.try_emplace(n.id, i).second) violations.push_back(name + ": duplicate id");
    if (!positive_finite(n.radius)) violations.push_back(name + ": radius must be positive and finite");
    if (!positive_finite(n.weight)) violations.push_back(name + ": weight must be positive and finite");
  }

  const auto& edges = graph.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    const std::string name = "edge " + std::to_string(i);
    if (e.source >= nodes.size()) violations.push_back(name + ": source out of range");
    if (e.target >= nodes.size()) violations.push_back(name + ": target out of range");
    if (!positive_finite(e.weight)) violations.push_back(name + ": weight must be positive and finite");
    if (e.rest_length && !positive_finite(*e.rest_length))
      violations.push_back(name + ": rest_length must be positive and finite");
  }
  return violations;
}

Components connected_components(const Graph& graph) {
  const std::size_t n = graph.node_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});

  auto root = [&](std::size_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (const auto& e : graph.edges()) {
    auto a = root(e.source), b = root(e.target);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  Components out;
  out.labels.assign(n, 0);
  std::vector<std::size_t> label_of_root(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    auto r = root(v);
    if (label_of_root[r] == n) label_of_root[r] = out.count++;
    out.labels[v] = label_of_root[r];
  }
  return out;
}

std::vector<std::size_t> degrees(const Graph& graph) {
  std::vector<std::size_t> deg(graph.node_count(), 0);
  for (const auto& e : graph.edges()) {
    ++deg[e.source];
    ++deg[e.target];
  }
  return deg;
}

}  // namespace layoutlab
