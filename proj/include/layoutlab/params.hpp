#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace layoutlab {

enum class Engine { annealed, continuous };

std::string_view to_string(Engine engine);
std::optional<Engine> engine_from_string(std::string_view name);

/// Every tunable of both engines. This is the unit the UI edits live.
struct SimParams {
  Engine engine = Engine::annealed;

  // annealed
  double alpha = 1.0;
  double alpha_min = 0.001;
  double alpha_decay = 1.0 - std::pow(0.001, 1.0 / 300.0);
  double alpha_target = 0.0;
  double velocity_damping = 0.4;

  // shared forces
  double repulsion_strength = -30.0;  // negative repels
  double theta = 0.9;
  std::optional<double> link_strength;  // unset: weight / min(deg s, deg t)
  double link_rest_length = 30.0;
  double center_strength = 0.05;
  bool collide_enabled = true;
  double collide_padding = 2.0;
  int collide_iterations = 1;

  // continuous
  double time_step = 20.0;
  double spring_coefficient = 8e-4;
  double drag_coefficient = 0.02;
  double gravity_strength = -1.2;
  double stop_epsilon = 0.01;

  friend bool operator==(const SimParams&, const SimParams&) = default;
};

/// A single field value. monostate means "null", used to reset link_strength.
using ParamValue = std::variant<std::monostate, bool, double, Engine>;

/// Ordered partial update of SimParams.
struct ParamPatch {
  std::vector<std::pair<std::string, ParamValue>> entries;

  bool empty() const { return entries.empty(); }
  void set(std::string key, ParamValue value) { entries.emplace_back(std::move(key), std::move(value)); }

  friend bool operator==(const ParamPatch&, const ParamPatch&) = default;
};

enum class ParamKind { number, integer, boolean, engine, optional_number };

struct ParamInfo {
  std::string_view name;
  std::string_view group;  // "annealed", "forces" or "continuous"
  ParamKind kind;
};

/// Field table in declaration order.
const std::vector<ParamInfo>& param_fields();
const ParamInfo* find_param(std::string_view name);

ParamValue get_param(const SimParams& params, std::string_view name);

/// Checks the field's type and range and assigns it. theta outside [0, 2]
/// is clamped and a warning is returned; other violations throw ParamError.
std::optional<std::string> set_param(SimParams& params, std::string_view name, const ParamValue& value);

/// All-or-nothing: on any error `params` is left untouched. Returns warnings.
std::vector<std::string> apply_patch(SimParams& params, const ParamPatch& patch);

/// Violated ranges, one message per field.
std::vector<std::string> check(const SimParams& params);

/// Parses command-line text for a field: numbers, true/false, engine names,
/// and "default" for link_strength. Accepts `group.name` keys as well.
std::pair<std::string, ParamValue> parse_param_assignment(std::string_view assignment);

}  // namespace layoutlab
