#include <algorithm>

#include "layoutlab/jiggle.hpp"
#include "layoutlab/simulation.hpp"

namespace layoutlab {

std::vector<Vec2> init_positions(std::size_t n) {
  static const double kAngle = M_PI * (3.0 - std::sqrt(5.0));
  std::vector<Vec2> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = 10.0 * std::sqrt(0.5 + static_cast<double>(i));
    const double a = static_cast<double>(i) * kAngle;
    out[i] = {r * std::cos(a), r * std::sin(a)};
  }
  return out;
}

LinkTable LinkTable::build(const Graph& graph, const SimParams& params) {
  const auto deg = degrees(graph);
  LinkTable t;
  const auto& edges = graph.edges();
  t.strength.resize(edges.size());
  t.rest_length.resize(edges.size());
  t.bias.resize(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& edge = edges[e];
    const double ds = static_cast<double>(deg[edge.source]);
    const double dt = static_cast<double>(deg[edge.target]);
    const double base = params.link_strength ? *params.link_strength : 1.0 / std::min(ds, dt);
    t.strength[e] = edge.weight * base;
    t.rest_length[e] = edge.rest_length.value_or(params.link_rest_length);
    t.bias[e] = ds / (ds + dt);
  }
  return t;
}

void apply_link_force(const Graph& graph, const LinkTable& links, LayoutState& state, double alpha,
                      std::uint64_t seed) {
  auto& pos = state.positions;
  auto& vel = state.velocities;
  const auto& edges = graph.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [s, t] = std::pair{edges[e].source, edges[e].target};
    if (s == t) continue;
    Vec2 delta = (pos[t] + vel[t]) - (pos[s] + vel[s]);
    double d = delta.norm();
    if (d < QuadTree::kCoincident) {
      delta = jiggle(seed, s, t);
      d = delta.norm();
    }
    const Vec2 c = delta * ((d - links.rest_length[e]) / d * links.strength[e] * alpha);
    const double b = links.bias[e];
    if (!state.pinned[t]) vel[t] -= c * b;
    if (!state.pinned[s]) vel[s] += c * (1.0 - b);
  }
}

std::vector<double> node_charges(const Graph& graph, double strength) {
  std::vector<double> q(graph.node_count());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = strength * graph.nodes()[i].weight;
  return q;
}

void apply_many_body_force(LayoutState& state, const QuadTree& tree, double alpha, double theta) {
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (state.pinned[i]) continue;
    state.velocities[i] += tree.approx_repulsion(i, state.positions[i], theta) * alpha;
  }
}

void apply_center_force(const Graph& graph, LayoutState& state, double strength) {
  Vec2 sum;
  double total = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (state.pinned[i]) continue;
    const double w = graph.nodes()[i].weight;
    sum += state.positions[i] * w;
    total += w;
  }
  if (total <= 0.0) return;
  const Vec2 shift = sum / total * strength;
  for (std::size_t i = 0; i < state.size(); ++i)
    if (!state.pinned[i]) state.positions[i] -= shift;
}

void apply_collide_force(const Graph& graph, LayoutState& state, double padding, int iterations,
                         std::uint64_t seed) {
  const std::size_t n = state.size();
  if (n < 2) return;
  const auto& nodes = graph.nodes();
  double max_radius = 0.0;
  for (const auto& node : nodes) max_radius = std::max(max_radius, node.radius);
  const std::vector<double> no_charge(n, 0.0);
  auto& pos = state.positions;

  for (int pass = 0; pass < iterations; ++pass) {
    const QuadTree tree = QuadTree::build(pos, no_charge, seed);
    for (std::size_t i = 0; i < n; ++i) {
      const double reach = nodes[i].radius + max_radius + padding;
      for (std::size_t j : tree.query_circle(tree.position(i), reach)) {
        if (j <= i) continue;
        if (state.pinned[i] && state.pinned[j]) continue;
        const double min_dist = nodes[i].radius + nodes[j].radius + padding;
        Vec2 delta = pos[j] - pos[i];
        double d = delta.norm();
        if (d >= min_dist) continue;
        if (d < QuadTree::kCoincident) {
          delta = jiggle(seed, i, j);
          d = delta.norm();
        }
        const Vec2 push = delta * ((min_dist - d) / d);
        double share_i = 0.0, share_j = 0.0;
        if (state.pinned[i]) {
          share_j = 1.0;
        } else if (state.pinned[j]) {
          share_i = 1.0;
        } else {
          const double wi = nodes[i].weight, wj = nodes[j].weight;
          share_i = wj / (wi + wj);
          share_j = wi / (wi + wj);
        }
        pos[i] -= push * share_i;
        pos[j] += push * share_j;
      }
    }
  }
}

}  // namespace layoutlab
