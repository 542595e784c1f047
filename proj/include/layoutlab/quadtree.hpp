#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "layoutlab/geometry.hpp"

namespace layoutlab {

/// Square-region quadtree carrying aggregated charge for Barnes-Hut
/// evaluation of pairwise repulsion. Immutable once built; queries are safe
/// from multiple threads.
///
/// Leaves hold a single point, except that points closer than 1e-12 to each
/// other (or that reach the depth limit) share a leaf.
class QuadTree {
 public:
  static constexpr int kMaxDepth = 64;
  static constexpr double kCoincident = 1e-12;
  static constexpr double kDefaultTheta = 0.9;

  struct Cell {
    Vec2 center;
    double half_width = 0.0;
    std::array<std::int32_t, 4> children{-1, -1, -1, -1};
    double total_charge = 0.0;
    Vec2 centroid;
    std::int32_t first_point = -1;  // leaf point chain, via next_in_leaf
    std::int32_t depth = 0;

    bool is_leaf() const { return children[0] < 0; }
    bool contains(Vec2 p) const {
      return p.x >= center.x - half_width && p.x <= center.x + half_width &&
             p.y >= center.y - half_width && p.y <= center.y + half_width;
    }
  };

  QuadTree() = default;

  /// Throws std::invalid_argument naming the index of a non-finite
  /// coordinate, or on a size mismatch. `jiggle_seed` selects the
  /// deterministic separation applied to coincident points at query time.
  static QuadTree build(std::span<const Vec2> positions, std::span<const double> charges,
                        std::uint64_t jiggle_seed = 0);

  bool empty() const { return cells_.empty(); }
  std::size_t size() const { return positions_.size(); }
  const Cell& root() const { return cells_.front(); }
  const std::vector<Cell>& cells() const { return cells_; }
  Vec2 position(std::size_t i) const { return positions_[i]; }
  double charge(std::size_t i) const { return charges_[i]; }

  /// Σ charge_j · Δ / |Δ|² over j != self, Δ = position_j − p. Regions of
  /// width s at distance d from p with s/d < theta stand in for their
  /// contents, unless p lies inside them. theta is clamped to [0, 2].
  Vec2 approx_repulsion(std::size_t self, Vec2 p, double theta) const;

  /// Indices within distance r of center (inclusive), ascending.
  std::vector<std::size_t> query_circle(Vec2 center, double r) const;

  /// Indices stored in the leaf chain starting at `first`.
  template <typename F>
  void for_each_in_leaf(const Cell& leaf, F&& f) const {
    for (std::int32_t k = leaf.first_point; k >= 0; k = next_in_leaf_[k]) f(std::size_t(k));
  }

 private:
  void insert(std::int32_t point);
  std::int32_t subdivide(std::int32_t cell);
  void aggregate();

  std::vector<Cell> cells_;
  std::vector<Vec2> positions_;
  std::vector<double> charges_;
  std::vector<std::int32_t> next_in_leaf_;
  std::uint64_t seed_ = 0;
};

}  // namespace layoutlab
