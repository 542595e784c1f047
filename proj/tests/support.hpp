#pragma once

// Shared fixtures and brute-force oracles. Nothing here calls into the
// quadtree or the force code it is used to check.

#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "layoutlab/geometry.hpp"
#include "layoutlab/graph.hpp"

namespace support {

using layoutlab::EdgeRecord;
using layoutlab::Graph;
using layoutlab::NodeRecord;
using layoutlab::Vec2;

inline std::vector<NodeRecord> make_nodes(std::size_t n, double radius = 6.0) {
  std::vector<NodeRecord> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back({"n" + std::to_string(i), radius, 1.0});
  return nodes;
}

inline EdgeRecord edge(std::size_t s, std::size_t t, double w = 1.0) { return {s, t, w, std::nullopt}; }

inline Graph cycle(std::size_t n) {
  std::vector<EdgeRecord> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back(edge(i, (i + 1) % n));
  return Graph(make_nodes(n), edges);
}

/// `count` disjoint cliques of `size` nodes each.
inline Graph cliques(std::size_t count, std::size_t size) {
  std::vector<EdgeRecord> edges;
  for (std::size_t c = 0; c < count; ++c)
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = i + 1; j < size; ++j) edges.push_back(edge(c * size + i, c * size + j));
  return Graph(make_nodes(count * size), edges);
}

/// Erdős–Rényi-style graph with exactly m distinct non-loop edges.
inline Graph random_graph(std::size_t n, std::size_t m, std::mt19937_64& rng, double radius = 6.0) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<EdgeRecord> edges;
  while (edges.size() < m) {
    auto a = pick(rng), b = pick(rng);
    if (a == b) continue;
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second) continue;
    edges.push_back(edge(a, b));
  }
  return Graph(make_nodes(n, radius), edges);
}

/// Random connected graph on [offset, offset+n): a random tree plus extras.
inline void random_component(std::size_t offset, std::size_t n, std::size_t extra, std::mt19937_64& rng,
                             std::vector<EdgeRecord>& edges) {
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> parent(0, i - 1);
    edges.push_back(edge(offset + parent(rng), offset + i));
  }
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t k = 0; k < extra && n > 1; ++k) {
    auto a = pick(rng), b = pick(rng);
    if (a != b) edges.push_back(edge(offset + a, offset + b));
  }
}

inline std::vector<Vec2> random_points(std::size_t n, std::mt19937_64& rng, double lo = -500.0, double hi = 500.0) {
  std::uniform_real_distribution<double> coord(lo, hi);
  std::vector<Vec2> pts(n);
  for (auto& p : pts) p = {coord(rng), coord(rng)};
  return pts;
}

/// Σ_{j≠i} q_j (x_j − x_i) / |x_j − x_i|², evaluated in long double.
inline Vec2 all_pairs_force(const std::vector<Vec2>& pos, const std::vector<double>& charges, std::size_t i) {
  long double fx = 0, fy = 0;
  for (std::size_t j = 0; j < pos.size(); ++j) {
    if (j == i) continue;
    const long double dx = (long double)pos[j].x - pos[i].x, dy = (long double)pos[j].y - pos[i].y;
    const long double d2 = dx * dx + dy * dy;
    fx += charges[j] * dx / d2;
    fy += charges[j] * dy / d2;
  }
  return {double(fx), double(fy)};
}

inline double rel_error(Vec2 got, Vec2 want) {
  const double denom = want.norm();
  return denom == 0.0 ? got.norm() : (got - want).norm() / denom;
}

inline std::vector<double> edge_lengths(const Graph& g, const std::vector<Vec2>& pos) {
  std::vector<double> out;
  for (const auto& e : g.edges()) out.push_back(layoutlab::distance(pos[e.source], pos[e.target]));
  return out;
}

inline double coefficient_of_variation(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= double(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= double(xs.size());
  return std::sqrt(var) / mean;
}

/// Pairs whose discs intersect by more than `slack`.
inline std::size_t overlapping_pairs(const Graph& g, const std::vector<Vec2>& pos, double slack = 1e-9) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = i + 1; j < pos.size(); ++j) {
      const double r = g.nodes()[i].radius + g.nodes()[j].radius;
      if (layoutlab::distance(pos[i], pos[j]) < r - slack) ++count;
    }
  return count;
}

inline Vec2 mean_of(const std::vector<Vec2>& pos, std::size_t first, std::size_t count) {
  Vec2 sum;
  for (std::size_t i = first; i < first + count; ++i) sum += pos[i];
  return sum / double(count);
}

struct Box {
  double x0, y0, x1, y1;
};

/// Radius-inflated bounding box of the listed rows.
inline Box bounding_box(const Graph& g, const std::vector<Vec2>& pos, const std::vector<std::size_t>& rows) {
  Box b{INFINITY, INFINITY, -INFINITY, -INFINITY};
  for (auto i : rows) {
    const double r = g.nodes()[i].radius;
    b.x0 = std::min(b.x0, pos[i].x - r);
    b.y0 = std::min(b.y0, pos[i].y - r);
    b.x1 = std::max(b.x1, pos[i].x + r);
    b.y1 = std::max(b.y1, pos[i].y + r);
  }
  return b;
}

/// Chebyshev gap between boxes; negative when they overlap.
inline double box_gap(const Box& a, const Box& b) {
  const double gx = std::max(a.x0 - b.x1, b.x0 - a.x1);
  const double gy = std::max(a.y0 - b.y1, b.y0 - a.y1);
  return std::max(gx, gy);
}

/// Rows grouped by component, found by a plain BFS.
inline std::vector<std::vector<std::size_t>> component_rows(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.source].push_back(e.target);
    adj[e.target].push_back(e.source);
  }
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    out.emplace_back();
    std::vector<std::size_t> queue{s};
    seen[s] = true;
    for (std::size_t k = 0; k < queue.size(); ++k) {
      out.back().push_back(queue[k]);
      for (auto v : adj[queue[k]])
        if (!seen[v]) seen[v] = true, queue.push_back(v);
    }
  }
  return out;
}

}  // namespace support
