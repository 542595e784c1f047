#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "layoutlab/geometry.hpp"
#include "layoutlab/simulation.hpp"

namespace layoutlab {

/// Sorted, duplicate-free node indices, all below the node count given at
/// construction.
class Selection {
 public:
  Selection() = default;
  /// Throws std::out_of_range if an index is >= node_count.
  Selection(std::span<const std::size_t> indices, std::size_t node_count);
  Selection(std::initializer_list<std::size_t> indices, std::size_t node_count)
      : Selection(std::span<const std::size_t>(indices.begin(), indices.size()), node_count) {}

  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(std::size_t i) const;

  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

 private:
  std::vector<std::size_t> indices_;
};

/// Unweighted mean of the selected positions. Throws on an empty selection.
Vec2 selection_centroid(const LayoutState& state, const Selection& sel);

// Edits return the new state; selected velocities are zeroed and every
// unselected row is left bit-identical.

LayoutState translate_selection(LayoutState state, const Selection& sel, Vec2 delta);

/// Rotates about `pivot`, defaulting to the selection centroid.
LayoutState rotate_selection(LayoutState state, const Selection& sel, double angle_rad,
                             std::optional<Vec2> pivot = std::nullopt);

LayoutState set_pinned(LayoutState state, const Selection& sel, bool flag);

}  // namespace layoutlab
