#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "layoutlab/simulation.hpp"

namespace layoutlab {

namespace {

struct Box {
  Vec2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Vec2 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

  void grow(Vec2 p, double r) {
    lo = {std::min(lo.x, p.x - r), std::min(lo.y, p.y - r)};
    hi = {std::max(hi.x, p.x + r), std::max(hi.y, p.y + r)};
  }
  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
  double area() const { return width() * height(); }
};

}  // namespace

LayoutState pack_components(const Graph& graph, LayoutState state, double margin) {
  if (state.size() != graph.node_count()) throw std::invalid_argument("layout row count mismatch");
  if (!(margin >= 0.0)) throw std::invalid_argument("margin must be non-negative");
  if (graph.empty()) return state;

  const auto comps = connected_components(graph);
  std::vector<Box> boxes(comps.count);
  for (std::size_t i = 0; i < state.size(); ++i)
    boxes[comps.labels[i]].grow(state.positions[i], graph.nodes()[i].radius);

  std::vector<std::size_t> order(comps.count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return boxes[a].area() > boxes[b].area(); });

  double total_area = 0.0;
  double widest = 0.0;
  for (const auto& b : boxes) {
    total_area += (b.width() + margin) * (b.height() + margin);
    widest = std::max(widest, b.width());
  }
  const double row_limit = std::max(std::sqrt(total_area), widest);

  // Rows are moved by pos + (offset - recenter); pad the gap by a few ulps of
  // the largest coordinate involved so rounding cannot eat into the margin.
  double scale = row_limit;
  for (const auto& b : boxes) {
    scale = std::max({scale, std::abs(b.lo.x), std::abs(b.lo.y), std::abs(b.hi.x), std::abs(b.hi.y)});
    scale += b.height() + margin;
  }
  const double spacing = margin + 16.0 * std::numeric_limits<double>::epsilon() * scale;

  // Shelf packing: left to right, new shelf once the row would pass the limit.
  std::vector<Vec2> offset(comps.count);
  double x = 0.0, y = 0.0, shelf_height = 0.0;
  Box composite;
  for (std::size_t c : order) {
    const Box& b = boxes[c];
    if (x > 0.0 && x + b.width() > row_limit) {
      x = 0.0;
      y += shelf_height + spacing;
      shelf_height = 0.0;
    }
    offset[c] = Vec2{x, y} - b.lo;
    composite.grow(Vec2{x, y}, 0.0);
    composite.grow(Vec2{x + b.width(), y + b.height()}, 0.0);
    x += b.width() + spacing;
    shelf_height = std::max(shelf_height, b.height());
  }

  const Vec2 recenter = (composite.lo + composite.hi) * 0.5;
  for (std::size_t i = 0; i < state.size(); ++i) {
    state.positions[i] += offset[comps.labels[i]] - recenter;
    state.velocities[i] = {};
  }
  return state;
}

}  // namespace layoutlab
