#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "layoutlab/jiggle.hpp"
#include "layoutlab/quadtree.hpp"
#include "support.hpp"

using namespace layoutlab;
using doctest::Approx;

TEST_SUITE("quadtree") {
  TEST_CASE("empty tree") {
    auto t = QuadTree::build({}, {});
    CHECK(t.empty());
    auto f = t.approx_repulsion(0, {1, 2}, 0.5);
    CHECK(f.x == 0.0);
    CHECK(f.y == 0.0);
    CHECK(t.query_circle({0, 0}, 10).empty());
  }

  TEST_CASE("single node") {
    std::vector<Vec2> pos{{3, 4}};
    std::vector<double> q{-30};
    auto t = QuadTree::build(pos, q);
    CHECK(t.root().is_leaf());
    CHECK(t.root().total_charge == -30.0);
    CHECK(t.root().centroid == Vec2{3, 4});
    auto f = t.approx_repulsion(0, pos[0], 0.9);
    CHECK(f == Vec2{0, 0});
  }

  TEST_CASE("unit square aggregate") {
    std::vector<Vec2> pos{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    std::vector<double> q(4, -1.0);
    auto t = QuadTree::build(pos, q);
    CHECK(t.root().total_charge == Approx(-4.0));
    CHECK(t.root().centroid.x == Approx(0.5));
    CHECK(t.root().centroid.y == Approx(0.5));
  }

  TEST_CASE("two nodes exact") {
    std::vector<Vec2> pos{{0, 0}, {10, 0}};
    std::vector<double> q{-30, -30};
    auto t = QuadTree::build(pos, q);
    auto f = t.approx_repulsion(0, pos[0], 0.0);
    CHECK(f.x == Approx(-3.0));
    CHECK(f.y == Approx(0.0));
  }

  TEST_CASE("every cell aggregates its subtree") {
    std::mt19937_64 rng(11);
    auto pos = support::random_points(300, rng);
    std::vector<double> q(300);
    std::uniform_real_distribution<double> charge(-40, -1);
    for (auto& c : q) c = charge(rng);
    auto t = QuadTree::build(pos, q);
    for (const auto& cell : t.cells()) {
      double total = 0, wsum = 0;
      Vec2 c;
      for (std::size_t i = 0; i < pos.size(); ++i) {
        const bool inside = pos[i].x >= cell.center.x - cell.half_width && pos[i].x < cell.center.x + cell.half_width &&
                            pos[i].y >= cell.center.y - cell.half_width && pos[i].y < cell.center.y + cell.half_width;
        if (!inside) continue;
        total += q[i];
        wsum += std::abs(q[i]);
        c += pos[i] * std::abs(q[i]);
      }
      if (wsum == 0) continue;
      CHECK(cell.total_charge == Approx(total).epsilon(1e-12));
      CHECK(cell.centroid.x == Approx(c.x / wsum).epsilon(1e-9));
      CHECK(cell.centroid.y == Approx(c.y / wsum).epsilon(1e-9));
    }
  }

  TEST_CASE("theta 0 matches all pairs") {
    std::mt19937_64 rng(5);
    auto pos = support::random_points(200, rng);
    std::vector<double> q(200, -30.0);
    auto t = QuadTree::build(pos, q);
    for (std::size_t i = 0; i < pos.size(); ++i)
      CHECK(support::rel_error(t.approx_repulsion(i, pos[i], 0.0), support::all_pairs_force(pos, q, i)) < 1e-9);
  }

  TEST_CASE("theta 0.5 within five percent") {
    std::mt19937_64 rng(6);
    auto pos = support::random_points(100, rng);
    std::vector<double> q(100, -30.0);
    auto t = QuadTree::build(pos, q);
    double mean = 0;
    for (std::size_t i = 0; i < pos.size(); ++i)
      mean += support::rel_error(t.approx_repulsion(i, pos[i], 0.5), support::all_pairs_force(pos, q, i));
    CHECK(mean / 100.0 <= 0.05);
  }

  TEST_CASE("clustered input stays accurate") {
    std::mt19937_64 rng(8);
    auto pos = support::random_points(150, rng, 0.0, 1e-3);
    auto far = support::random_points(50, rng, 1e4, 1e4 + 10);
    pos.insert(pos.end(), far.begin(), far.end());
    std::vector<double> q(pos.size(), -30.0);
    auto t = QuadTree::build(pos, q);
    for (std::size_t i = 0; i < pos.size(); ++i)
      CHECK(support::rel_error(t.approx_repulsion(i, pos[i], 0.0), support::all_pairs_force(pos, q, i)) < 1e-9);
  }

  TEST_CASE("coincident points are jiggled, antisymmetric and finite") {
    std::vector<Vec2> pos{{1, 1}, {1, 1}, {1, 1}};
    std::vector<double> q(3, -30.0);
    auto t = QuadTree::build(pos, q, 99);
    Vec2 sum;
    double largest = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      auto f = t.approx_repulsion(i, pos[i], 0.9);
      CHECK(f.finite());
      CHECK(f.norm() > 0.0);
      largest = std::max(largest, f.norm());
      sum += f;
    }
    CHECK(sum.norm() <= 1e-9 * largest);

    auto a = jiggle(99, 0, 1), b = jiggle(99, 1, 0);
    CHECK(a.x == -b.x);
    CHECK(a.y == -b.y);
    CHECK(a.x != 0.0);
    CHECK(std::abs(a.x) < 1e-6);
    CHECK(jiggle(99, 0, 1) == jiggle(99, 0, 1));
    CHECK(!(jiggle(98, 0, 1) == jiggle(99, 0, 1)));
  }

  TEST_CASE("non-finite input is rejected") {
    std::vector<Vec2> pos{{0, 0}, {std::numeric_limits<double>::quiet_NaN(), 0}};
    std::vector<double> q(2, -1.0);
    CHECK_THROWS_AS(QuadTree::build(pos, q), std::invalid_argument);
    std::vector<double> short_q(1, -1.0);
    CHECK_THROWS_AS(QuadTree::build(std::vector<Vec2>{{0, 0}, {1, 1}}, short_q), std::invalid_argument);
  }

  TEST_CASE("query circle") {
    std::vector<Vec2> pos{{0, 0}, {3, 4}, {10, 0}};
    std::vector<double> q(3, 0.0);
    auto t = QuadTree::build(pos, q);
    CHECK(t.query_circle({3, 4}, 0.0) == std::vector<std::size_t>{1});
    CHECK(t.query_circle({100, 100}, 1.0).empty());
    CHECK(t.query_circle({0, 0}, 5.0) == std::vector<std::size_t>{0, 1});
  }

  TEST_CASE("query circle equals linear scan") {
    std::mt19937_64 rng(12);
    auto pos = support::random_points(200, rng, 0, 100);
    std::vector<double> q(200, -1.0);
    auto t = QuadTree::build(pos, q);
    std::uniform_real_distribution<double> c(-10, 110), r(0, 30);
    for (int k = 0; k < 100; ++k) {
      Vec2 center{c(rng), c(rng)};
      double radius = r(rng);
      std::vector<std::size_t> want;
      for (std::size_t i = 0; i < pos.size(); ++i)
        if (distance(pos[i], center) <= radius) want.push_back(i);
      CHECK(t.query_circle(center, radius) == want);
    }
  }

  TEST_CASE("depth stays bounded for near-coincident points") {
    std::vector<Vec2> pos;
    for (int i = 0; i < 50; ++i) pos.push_back({1.0 + i * 1e-15, 2.0});
    std::vector<double> q(pos.size(), -1.0);
    auto t = QuadTree::build(pos, q);
    for (const auto& cell : t.cells()) CHECK(cell.depth <= QuadTree::kMaxDepth);
    for (std::size_t i = 0; i < pos.size(); ++i) CHECK(t.approx_repulsion(i, pos[i], 0.9).finite());
  }
}
