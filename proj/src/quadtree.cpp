#include "layoutlab/quadtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "layoutlab/jiggle.hpp"

namespace layoutlab {

namespace {

int quadrant(const QuadTree::Cell& cell, Vec2 p) {
  return (p.x >= cell.center.x ? 1 : 0) | (p.y >= cell.center.y ? 2 : 0);
}

}  // namespace

QuadTree QuadTree::build(std::span<const Vec2> positions, std::span<const double> charges,
                         std::uint64_t jiggle_seed) {
  if (positions.size() != charges.size())
    throw std::invalid_argument("quadtree: positions and charges differ in length");

  QuadTree tree;
  tree.seed_ = jiggle_seed;
  if (positions.empty()) return tree;

  Vec2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Vec2 hi = -lo;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const Vec2 p = positions[i];
    if (!p.finite()) throw std::invalid_argument("quadtree: position " + std::to_string(i) + " is not finite");
    if (!std::isfinite(charges[i]))
      throw std::invalid_argument("quadtree: charge " + std::to_string(i) + " is not finite");
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }

  tree.positions_.assign(positions.begin(), positions.end());
  tree.charges_.assign(charges.begin(), charges.end());
  tree.next_in_leaf_.assign(positions.size(), -1);
  tree.cells_.reserve(positions.size() * 2 + 1);

  Cell root;
  root.center = (lo + hi) * 0.5;
  root.half_width = 0.5 * std::max(hi.x - lo.x, hi.y - lo.y) * 1.01;
  if (root.half_width <= 0.0) root.half_width = 1.0;
  tree.cells_.push_back(root);

  for (std::size_t i = 0; i < positions.size(); ++i) tree.insert(static_cast<std::int32_t>(i));
  tree.aggregate();
  return tree;
}

std::int32_t QuadTree::subdivide(std::int32_t cell) {
  const Cell parent = cells_[cell];
  const double h = parent.half_width * 0.5;
  const auto first = static_cast<std::int32_t>(cells_.size());
  for (int q = 0; q < 4; ++q) {
    Cell child;
    child.center = {parent.center.x + ((q & 1) ? h : -h), parent.center.y + ((q & 2) ? h : -h)};
    child.half_width = h;
    child.depth = parent.depth + 1;
    cells_.push_back(child);
    cells_[cell].children[q] = first + q;
  }
  return first;
}

void QuadTree::insert(std::int32_t point) {
  const Vec2 p = positions_[point];
  std::int32_t c = 0;
  for (;;) {
    if (!cells_[c].is_leaf()) {
      c = cells_[c].children[quadrant(cells_[c], p)];
      continue;
    }
    const std::int32_t head = cells_[c].first_point;
    if (head < 0) {
      cells_[c].first_point = point;
      return;
    }
    if ((positions_[head] - p).norm2() < kCoincident * kCoincident || cells_[c].depth >= kMaxDepth) {
      next_in_leaf_[point] = head;
      cells_[c].first_point = point;
      return;
    }

    // Push the occupant chain one level down, then retry from this cell.
    subdivide(c);
    cells_[c].first_point = -1;
    for (std::int32_t k = head; k >= 0;) {
      const std::int32_t next = next_in_leaf_[k];
      Cell& child = cells_[cells_[c].children[quadrant(cells_[c], positions_[k])]];
      next_in_leaf_[k] = child.first_point;
      child.first_point = k;
      k = next;
    }
  }
}

void QuadTree::aggregate() {
  // Children always sit after their parent, so a reverse sweep is post-order.
  std::vector<double> abs_charge(cells_.size(), 0.0);
  std::vector<std::size_t> count(cells_.size(), 0);
  std::vector<Vec2> plain_sum(cells_.size());

  for (std::size_t c = cells_.size(); c-- > 0;) {
    Cell& cell = cells_[c];
    Vec2 weighted;
    if (cell.is_leaf()) {
      for (std::int32_t k = cell.first_point; k >= 0; k = next_in_leaf_[k]) {
        cell.total_charge += charges_[k];
        abs_charge[c] += std::abs(charges_[k]);
        weighted += positions_[k] * std::abs(charges_[k]);
        plain_sum[c] += positions_[k];
        ++count[c];
      }
    } else {
      for (std::int32_t child : cell.children) {
        const Cell& ch = cells_[child];
        cell.total_charge += ch.total_charge;
        abs_charge[c] += abs_charge[child];
        weighted += ch.centroid * abs_charge[child];
        plain_sum[c] += plain_sum[child];
        count[c] += count[child];
      }
    }
    if (abs_charge[c] > 0.0) cell.centroid = weighted / abs_charge[c];
    else if (count[c] > 0) cell.centroid = plain_sum[c] / static_cast<double>(count[c]);
    else cell.centroid = cell.center;
  }
}

Vec2 QuadTree::approx_repulsion(std::size_t self, Vec2 p, double theta) const {
  Vec2 force;
  if (cells_.empty()) return force;
  theta = std::clamp(theta, 0.0, 2.0);
  const double theta2 = theta * theta;

  std::vector<std::int32_t> stack;
  stack.reserve(4 * kMaxDepth);
  stack.push_back(0);
  while (!stack.empty()) {
    const Cell& cell = cells_[stack.back()];
    stack.pop_back();

    if (cell.is_leaf()) {
      for (std::int32_t k = cell.first_point; k >= 0; k = next_in_leaf_[k]) {
        if (static_cast<std::size_t>(k) == self) continue;
        Vec2 delta = positions_[k] - p;
        double d2 = delta.norm2();
        if (d2 < kCoincident * kCoincident) {
          delta = jiggle(seed_, self, static_cast<std::size_t>(k));
          d2 = delta.norm2();
        }
        force += delta * (charges_[k] / d2);
      }
      continue;
    }

    if (!cell.contains(p)) {
      const double width = 2.0 * cell.half_width;
      const Vec2 delta = cell.centroid - p;
      const double d2 = delta.norm2();
      if (width * width < theta2 * d2) {
        force += delta * (cell.total_charge / d2);
        continue;
      }
    }
    for (int q = 3; q >= 0; --q) stack.push_back(cell.children[q]);
  }
  return force;
}

std::vector<std::size_t> QuadTree::query_circle(Vec2 center, double r) const {
  std::vector<std::size_t> out;
  if (cells_.empty() || !(r >= 0.0)) return out;
  const double r2 = r * r;

  std::vector<std::int32_t> stack{0};
  while (!stack.empty()) {
    const Cell& cell = cells_[stack.back()];
    stack.pop_back();
    const double dx = std::max(std::abs(center.x - cell.center.x) - cell.half_width, 0.0);
    const double dy = std::max(std::abs(center.y - cell.center.y) - cell.half_width, 0.0);
    if (dx * dx + dy * dy > r2) continue;
    if (cell.is_leaf()) {
      for (std::int32_t k = cell.first_point; k >= 0; k = next_in_leaf_[k])
        if ((positions_[k] - center).norm2() <= r2) out.push_back(static_cast<std::size_t>(k));
    } else {
      for (int q = 3; q >= 0; --q) stack.push_back(cell.children[q]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace layoutlab
