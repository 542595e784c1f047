#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "layoutlab/geometry.hpp"
#include "layoutlab/graph.hpp"
#include "layoutlab/params.hpp"
#include "layoutlab/quadtree.hpp"

namespace layoutlab {

/// The evolving N×2 coordinate matrix plus per-node velocity and pin flag.
/// Rows follow graph node order.
struct LayoutState {
  std::vector<Vec2> positions;
  std::vector<Vec2> velocities;
  std::vector<bool> pinned;

  LayoutState() = default;
  explicit LayoutState(std::vector<Vec2> pos)
      : positions(std::move(pos)), velocities(positions.size()), pinned(positions.size(), false) {}

  std::size_t size() const { return positions.size(); }

  friend bool operator==(const LayoutState&, const LayoutState&) = default;
};

struct TickReport {
  long tick_index = 0;
  double alpha = 0.0;
  double mean_movement = 0.0;
  bool converged = false;
};

/// A force stage produced a non-finite coordinate; usually a parameter blow-up.
class SimulationError : public std::runtime_error {
 public:
  SimulationError(std::size_t node, std::string stage)
      : std::runtime_error("non-finite value at node " + std::to_string(node) + " after " + stage),
        node_(node),
        stage_(std::move(stage)) {}

  std::size_t node() const noexcept { return node_; }
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::size_t node_;
  std::string stage_;
};

/// Phyllotaxis spiral: node i at radius 10·√(0.5+i), angle i·π·(3−√5).
std::vector<Vec2> init_positions(std::size_t n);

/// Per-edge link constants derived from the graph and the current params.
struct LinkTable {
  std::vector<double> strength;     // k_e
  std::vector<double> rest_length;  // L_e
  std::vector<double> bias;         // deg(s) / (deg(s) + deg(t))

  static LinkTable build(const Graph& graph, const SimParams& params);
};

// Individual force passes. Each mutates `state` in place and leaves pinned
// rows untouched.

/// Springs on provisional positions (pos + vel), applied edge by edge.
void apply_link_force(const Graph& graph, const LinkTable& links, LayoutState& state, double alpha,
                      std::uint64_t seed);

/// Barnes-Hut repulsion from `tree`, which must be built over the current
/// positions with charge_i = repulsion_strength · weight_i.
void apply_many_body_force(LayoutState& state, const QuadTree& tree, double alpha, double theta);

/// Charges for the many-body tree.
std::vector<double> node_charges(const Graph& graph, double strength);

/// Shifts free nodes by −strength × (weighted centroid of free nodes).
void apply_center_force(const Graph& graph, LayoutState& state, double strength);

/// Separates overlapping discs (radius + padding) in index order.
void apply_collide_force(const Graph& graph, LayoutState& state, double padding, int iterations,
                         std::uint64_t seed);

/// Owns one evolving layout and advances it tick by tick. Holds a reference
/// to `graph`, which must outlive it.
class Simulation {
 public:
  Simulation(const Graph& graph, SimParams params, std::uint64_t seed = 0);
  Simulation(const Graph& graph, SimParams params, LayoutState state, std::uint64_t seed = 0);

  /// Advances one tick with the selected engine. Throws SimulationError.
  TickReport step();
  TickReport step_annealed();
  TickReport step_continuous();

  /// Whether another step would make progress.
  bool converged() const;

  const Graph& graph() const { return *graph_; }
  const LayoutState& state() const { return state_; }
  LayoutState& state() { return state_; }
  void set_state(LayoutState state);

  const SimParams& params() const { return params_; }
  /// Replaces params; link constants are rebuilt.
  void set_params(const SimParams& params);

  const TickReport& last_report() const { return last_; }
  long tick_count() const { return ticks_; }
  std::uint64_t seed() const { return seed_; }

 private:
  void check_finite(const char* stage, bool velocities) const;

  const Graph* graph_;
  SimParams params_;
  LayoutState state_;
  std::uint64_t seed_;
  LinkTable links_;
  std::vector<double> charges_;
  double charges_strength_ = 0.0;
  TickReport last_;
  long ticks_ = 0;
};

struct HeadlessResult {
  LayoutState state;
  TickReport report;
  SimParams params;  // final, alpha included
};

/// Spiral start, then steps until converged or `max_ticks` (≥ 1). Pure in
/// (graph, params, seed, max_ticks).
HeadlessResult run_headless(const Graph& graph, const SimParams& params, std::uint64_t seed, long max_ticks);

/// Rigidly rearranges connected components into shelves approximating a
/// square, boxes separated by at least `margin`. Velocities are zeroed.
LayoutState pack_components(const Graph& graph, LayoutState state, double margin);

}  // namespace layoutlab
