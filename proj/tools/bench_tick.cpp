// Non-gating benchmark: one annealed tick on a large random graph versus an
// all-pairs tick measured at a smaller n and projected quadratically.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <set>
#include <vector>

#include "layoutlab/quadtree.hpp"
#include "layoutlab/simulation.hpp"

using namespace layoutlab;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Graph random_graph(std::size_t n, std::size_t m, std::mt19937_64& rng) {
  std::vector<NodeRecord> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back({std::to_string(i)});
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<EdgeRecord> edges;
  while (edges.size() < m) {
    auto a = pick(rng), b = pick(rng);
    if (a != b && seen.insert({std::min(a, b), std::max(a, b)}).second) edges.push_back({a, b});
  }
  return Graph(std::move(nodes), std::move(edges));
}

// Many-body pass by direct summation; everything else in a tick is linear.
double all_pairs_pass(const std::vector<Vec2>& pos, double charge) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Vec2> f(pos.size());
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = 0; j < pos.size(); ++j) {
      if (i == j) continue;
      const Vec2 d = pos[j] - pos[i];
      f[i] += d * (charge / d.norm2());
    }
  volatile double sink = f[0].x;
  (void)sink;
  return seconds_since(t0);
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 10000;
  const std::size_t small = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 2000;
  const int reps = 5;

  std::mt19937_64 rng(7);
  const Graph g = random_graph(n, 2 * n, rng);
  Simulation sim(g, SimParams{}, 1);
  sim.step();  // warm-up
  auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) sim.step();
  const double tick = seconds_since(t0) / reps;

  const auto pos = init_positions(small);
  double brute = 0.0;
  for (int r = 0; r < reps; ++r) brute += all_pairs_pass(pos, SimParams{}.repulsion_strength);
  brute /= reps;
  const double scale = double(n) / double(small);
  const double projected = brute * scale * scale;

  std::printf("annealed tick n=%zu m=%zu: %.4f s\n", n, 2 * n, tick);
  std::printf("all-pairs pass n=%zu: %.4f s, projected to n=%zu: %.4f s\n", small, brute, n, projected);
  std::printf("speedup %.1fx (target >= 10x)\n", projected / tick);
  return 0;
}
