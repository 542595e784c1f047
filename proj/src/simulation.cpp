#include "layoutlab/simulation.hpp"

#include <stdexcept>

#include "layoutlab/jiggle.hpp"

namespace layoutlab {

Simulation::Simulation(const Graph& graph, SimParams params, std::uint64_t seed)
    : Simulation(graph, std::move(params), LayoutState(init_positions(graph.node_count())), seed) {}

Simulation::Simulation(const Graph& graph, SimParams params, LayoutState state, std::uint64_t seed)
    : graph_(&graph), params_(std::move(params)), state_(std::move(state)), seed_(seed) {
  if (state_.size() != graph.node_count())
    throw std::invalid_argument("layout has " + std::to_string(state_.size()) + " rows, graph has " +
                                std::to_string(graph.node_count()) + " nodes");
  links_ = LinkTable::build(graph, params_);
  last_.alpha = params_.alpha;
}

void Simulation::set_state(LayoutState state) {
  if (state.size() != graph_->node_count()) throw std::invalid_argument("layout row count mismatch");
  state_ = std::move(state);
}

void Simulation::set_params(const SimParams& params) {
  const bool relink = params.link_strength != params_.link_strength ||
                      params.link_rest_length != params_.link_rest_length;
  params_ = params;
  if (relink) links_ = LinkTable::build(*graph_, params_);
}

bool Simulation::converged() const {
  if (params_.engine == Engine::annealed) return params_.alpha < params_.alpha_min;
  return ticks_ > 0 && last_.converged;
}

void Simulation::check_finite(const char* stage, bool velocities) const {
  for (std::size_t i = 0; i < state_.size(); ++i) {
    if (!state_.positions[i].finite() || (velocities && !state_.velocities[i].finite()))
      throw SimulationError(i, stage);
  }
}

TickReport Simulation::step() {
  return params_.engine == Engine::annealed ? step_annealed() : step_continuous();
}

TickReport Simulation::step_annealed() {
  if (params_.alpha < params_.alpha_min) {
    last_ = TickReport{ticks_, params_.alpha, 0.0, true};
    return last_;
  }
  params_.alpha += (params_.alpha_target - params_.alpha) * params_.alpha_decay;
  const double alpha = params_.alpha;
  const std::vector<Vec2> before = state_.positions;

  apply_link_force(*graph_, links_, state_, alpha, seed_);
  check_finite("link force", true);

  if (charges_.size() != state_.size() || charges_strength_ != params_.repulsion_strength) {
    charges_ = node_charges(*graph_, params_.repulsion_strength);
    charges_strength_ = params_.repulsion_strength;
  }
  const QuadTree tree = QuadTree::build(state_.positions, charges_, seed_);
  apply_many_body_force(state_, tree, alpha, params_.theta);
  check_finite("many-body force", true);

  const double keep = 1.0 - params_.velocity_damping;
  for (std::size_t i = 0; i < state_.size(); ++i) {
    if (state_.pinned[i]) {
      state_.velocities[i] = {};
      continue;
    }
    state_.velocities[i] *= keep;
    state_.positions[i] += state_.velocities[i];
  }
  check_finite("integration", true);

  apply_center_force(*graph_, state_, params_.center_strength);
  check_finite("center force", false);
  if (params_.collide_enabled) {
    apply_collide_force(*graph_, state_, params_.collide_padding, params_.collide_iterations, seed_);
    check_finite("collide force", false);
  }

  double moved = 0.0;
  for (std::size_t i = 0; i < state_.size(); ++i) moved += distance(state_.positions[i], before[i]);
  last_ = TickReport{++ticks_, alpha, state_.size() ? moved / static_cast<double>(state_.size()) : 0.0,
                     alpha < params_.alpha_min};
  return last_;
}

TickReport Simulation::step_continuous() {
  const std::size_t n = state_.size();
  auto& pos = state_.positions;
  auto& vel = state_.velocities;
  std::vector<Vec2> force(n);

  const auto& edges = graph_->edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& edge = edges[e];
    if (edge.is_self_loop()) continue;
    Vec2 delta = pos[edge.target] - pos[edge.source];
    double d = delta.norm();
    if (d < QuadTree::kCoincident) {
      delta = jiggle(seed_, edge.source, edge.target);
      d = delta.norm();
    }
    const double rest = edge.rest_length.value_or(params_.link_rest_length);
    const Vec2 f = delta * (params_.spring_coefficient * edge.weight * (d - rest) / d);
    force[edge.source] += f;
    force[edge.target] -= f;
  }

  if (charges_.size() != n || charges_strength_ != params_.gravity_strength) {
    charges_ = node_charges(*graph_, params_.gravity_strength);
    charges_strength_ = params_.gravity_strength;
  }
  const QuadTree tree = QuadTree::build(pos, charges_, seed_);
  for (std::size_t i = 0; i < n; ++i)
    if (!state_.pinned[i]) force[i] += tree.approx_repulsion(i, pos[i], params_.theta);

  const double dt = params_.time_step;
  double moved = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (state_.pinned[i]) {
      vel[i] = {};
      continue;
    }
    force[i] -= vel[i] * params_.drag_coefficient;
    vel[i] += force[i] * dt;
    const Vec2 step = vel[i] * dt;
    pos[i] += step;
    moved += step.norm();
  }
  check_finite("integration", true);

  if (params_.collide_enabled) {
    apply_collide_force(*graph_, state_, params_.collide_padding, params_.collide_iterations, seed_);
    check_finite("collide force", false);
  }

  const double mean = n ? moved / static_cast<double>(n) : 0.0;
  last_ = TickReport{++ticks_, params_.alpha, mean, mean < params_.stop_epsilon};
  return last_;
}

HeadlessResult run_headless(const Graph& graph, const SimParams& params, std::uint64_t seed, long max_ticks) {
  if (max_ticks < 1) throw std::invalid_argument("max_ticks must be at least 1");
  Simulation sim(graph, params, seed);
  TickReport report{0, params.alpha, 0.0, graph.empty()};
  if (!graph.empty()) {
    for (long t = 0; t < max_ticks; ++t) {
      report = sim.step();
      if (report.converged) break;
    }
  }
  return {sim.state(), report, sim.params()};
}

}  // namespace layoutlab
