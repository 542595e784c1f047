#include "layoutlab/edit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace layoutlab {

Selection::Selection(std::span<const std::size_t> indices, std::size_t node_count)
    : indices_(indices.begin(), indices.end()) {
  for (std::size_t i : indices_)
    if (i >= node_count)
      throw std::out_of_range("selection index " + std::to_string(i) + " out of range");
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

bool Selection::contains(std::size_t i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

namespace {

void check_rows(const LayoutState& state, const Selection& sel) {
  if (!sel.empty() && sel.indices().back() >= state.size())
    throw std::out_of_range("selection does not fit the layout");
}

}  // namespace

Vec2 selection_centroid(const LayoutState& state, const Selection& sel) {
  if (sel.empty()) throw std::invalid_argument("empty selection");
  check_rows(state, sel);
  Vec2 sum;
  for (std::size_t i : sel) sum += state.positions[i];
  return sum / static_cast<double>(sel.size());
}

LayoutState translate_selection(LayoutState state, const Selection& sel, Vec2 delta) {
  if (!delta.finite()) throw std::invalid_argument("translation must be finite");
  check_rows(state, sel);
  for (std::size_t i : sel) {
    state.positions[i] += delta;
    state.velocities[i] = {};
  }
  return state;
}

LayoutState rotate_selection(LayoutState state, const Selection& sel, double angle_rad,
                             std::optional<Vec2> pivot) {
  if (sel.empty()) throw std::invalid_argument("empty selection");
  if (!std::isfinite(angle_rad)) throw std::invalid_argument("rotation angle must be finite");
  if (pivot && !pivot->finite()) throw std::invalid_argument("rotation pivot must be finite");
  const Vec2 c = pivot ? *pivot : selection_centroid(state, sel);
  const double cs = std::cos(angle_rad), sn = std::sin(angle_rad);
  for (std::size_t i : sel) {
    const Vec2 r = state.positions[i] - c;
    state.positions[i] = c + Vec2{cs * r.x - sn * r.y, sn * r.x + cs * r.y};
    state.velocities[i] = {};
  }
  return state;
}

LayoutState set_pinned(LayoutState state, const Selection& sel, bool flag) {
  check_rows(state, sel);
  for (std::size_t i : sel) {
    state.pinned[i] = flag;
    if (flag) state.velocities[i] = {};
  }
  return state;
}

}  // namespace layoutlab
