#include "layoutlab/params.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

#include "layoutlab/error.hpp"

namespace layoutlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Range {
  double lo = -kInf;
  double hi = kInf;
  bool lo_open = false;
  bool hi_open = false;

  bool holds(double v) const {
    if (!std::isfinite(v)) return false;
    if (lo_open ? v <= lo : v < lo) return false;
    if (hi_open ? v >= hi : v > hi) return false;
    return true;
  }
  std::string describe() const {
    std::ostringstream os;
    os << (lo_open ? "(" : "[") << lo << ", " << hi << (hi_open ? ")" : "]");
    return os.str();
  }
};

using Member = std::variant<Engine SimParams::*, double SimParams::*, int SimParams::*,
                            bool SimParams::*, std::optional<double> SimParams::*>;

struct Field {
  ParamInfo info;
  Member member;
  Range range;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {{"engine", "annealed", ParamKind::engine}, &SimParams::engine, {}},
      {{"alpha", "annealed", ParamKind::number}, &SimParams::alpha, {0, 1}},
      {{"alpha_min", "annealed", ParamKind::number}, &SimParams::alpha_min, {0, 1}},
      {{"alpha_decay", "annealed", ParamKind::number}, &SimParams::alpha_decay, {0, 1}},
      {{"alpha_target", "annealed", ParamKind::number}, &SimParams::alpha_target, {0, 1}},
      {{"velocity_damping", "annealed", ParamKind::number}, &SimParams::velocity_damping, {0, 1, false, true}},
      {{"repulsion_strength", "forces", ParamKind::number}, &SimParams::repulsion_strength, {}},
      {{"theta", "forces", ParamKind::number}, &SimParams::theta, {0, 2}},
      {{"link_strength", "forces", ParamKind::optional_number}, &SimParams::link_strength, {0, kInf}},
      {{"link_rest_length", "forces", ParamKind::number}, &SimParams::link_rest_length, {0, kInf, true}},
      {{"center_strength", "forces", ParamKind::number}, &SimParams::center_strength, {0, 1}},
      {{"collide_enabled", "forces", ParamKind::boolean}, &SimParams::collide_enabled, {}},
      {{"collide_padding", "forces", ParamKind::number}, &SimParams::collide_padding, {0, kInf}},
      {{"collide_iterations", "forces", ParamKind::integer}, &SimParams::collide_iterations, {0, 100}},
      {{"time_step", "continuous", ParamKind::number}, &SimParams::time_step, {0, kInf, true}},
      {{"spring_coefficient", "continuous", ParamKind::number}, &SimParams::spring_coefficient, {0, kInf}},
      {{"drag_coefficient", "continuous", ParamKind::number}, &SimParams::drag_coefficient, {0, kInf}},
      {{"gravity_strength", "continuous", ParamKind::number}, &SimParams::gravity_strength, {}},
      {{"stop_epsilon", "continuous", ParamKind::number}, &SimParams::stop_epsilon, {0, kInf}},
  };
  return table;
}

const Field& field_or_throw(std::string_view name) {
  for (const auto& f : fields())
    if (f.info.name == name) return f;
  throw ParamError("unknown parameter '" + std::string(name) + "'");
}

std::string kind_name(ParamKind kind) {
  switch (kind) {
    case ParamKind::number: return "a number";
    case ParamKind::integer: return "an integer";
    case ParamKind::boolean: return "a boolean";
    case ParamKind::engine: return "\"annealed\" or \"continuous\"";
    case ParamKind::optional_number: return "a number or null";
  }
  return "?";
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string_view to_string(Engine engine) {
  return engine == Engine::annealed ? "annealed" : "continuous";
}

std::optional<Engine> engine_from_string(std::string_view name) {
  if (name == "annealed") return Engine::annealed;
  if (name == "continuous") return Engine::continuous;
  return std::nullopt;
}

const std::vector<ParamInfo>& param_fields() {
  static const std::vector<ParamInfo> infos = [] {
    std::vector<ParamInfo> out;
    for (const auto& f : fields()) out.push_back(f.info);
    return out;
  }();
  return infos;
}

const ParamInfo* find_param(std::string_view name) {
  for (const auto& f : fields())
    if (f.info.name == name) return &f.info;
  return nullptr;
}

ParamValue get_param(const SimParams& params, std::string_view name) {
  const Field& f = field_or_throw(name);
  return std::visit(
      overloaded{
          [&](Engine SimParams::*m) -> ParamValue { return params.*m; },
          [&](double SimParams::*m) -> ParamValue { return params.*m; },
          [&](int SimParams::*m) -> ParamValue { return static_cast<double>(params.*m); },
          [&](bool SimParams::*m) -> ParamValue { return params.*m; },
          [&](std::optional<double> SimParams::*m) -> ParamValue {
            if (params.*m) return *(params.*m);
            return std::monostate{};
          },
      },
      f.member);
}

std::optional<std::string> set_param(SimParams& params, std::string_view name, const ParamValue& value) {
  const Field& f = field_or_throw(name);
  const std::string key(name);
  auto type_error = [&] { return ParamError(key + ": expected " + kind_name(f.info.kind)); };
  auto range_error = [&] { return ParamError(key + ": must lie in " + f.range.describe()); };

  std::optional<std::string> warning;
  std::visit(
      overloaded{
          [&](Engine SimParams::*m) {
            if (!std::holds_alternative<Engine>(value)) throw type_error();
            params.*m = std::get<Engine>(value);
          },
          [&](double SimParams::*m) {
            if (!std::holds_alternative<double>(value)) throw type_error();
            double v = std::get<double>(value);
            if (key == "theta" && std::isfinite(v) && !f.range.holds(v)) {
              double clamped = std::clamp(v, f.range.lo, f.range.hi);
              std::ostringstream os;
              os << "theta " << v << " clamped to " << clamped;
              warning = os.str();
              v = clamped;
            }
            if (!f.range.holds(v)) throw range_error();
            params.*m = v;
          },
          [&](int SimParams::*m) {
            if (!std::holds_alternative<double>(value)) throw type_error();
            double v = std::get<double>(value);
            if (v != std::floor(v)) throw type_error();
            if (!f.range.holds(v)) throw range_error();
            params.*m = static_cast<int>(v);
          },
          [&](bool SimParams::*m) {
            if (!std::holds_alternative<bool>(value)) throw type_error();
            params.*m = std::get<bool>(value);
          },
          [&](std::optional<double> SimParams::*m) {
            if (std::holds_alternative<std::monostate>(value)) {
              params.*m = std::nullopt;
              return;
            }
            if (!std::holds_alternative<double>(value)) throw type_error();
            double v = std::get<double>(value);
            if (!f.range.holds(v)) throw range_error();
            params.*m = v;
          },
      },
      f.member);
  return warning;
}

std::vector<std::string> apply_patch(SimParams& params, const ParamPatch& patch) {
  SimParams next = params;
  std::vector<std::string> warnings;
  for (const auto& [key, value] : patch.entries)
    if (auto w = set_param(next, key, value)) warnings.push_back(*w);
  params = next;
  return warnings;
}

std::vector<std::string> check(const SimParams& params) {
  std::vector<std::string> out;
  for (const auto& f : fields()) {
    SimParams scratch = params;
    try {
      if (auto w = set_param(scratch, f.info.name, get_param(params, f.info.name)))
        out.push_back(*w);
    } catch (const ParamError& e) {
      out.emplace_back(e.what());
    }
  }
  return out;
}

std::pair<std::string, ParamValue> parse_param_assignment(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw ParamError("expected key=value, got '" + std::string(assignment) + "'");
  std::string_view key = assignment.substr(0, eq);
  std::string_view text = assignment.substr(eq + 1);

  const ParamInfo* info = find_param(key);
  if (!info) {
    if (auto dot = key.find('.'); dot != std::string_view::npos) {
      const ParamInfo* candidate = find_param(key.substr(dot + 1));
      if (candidate && candidate->group == key.substr(0, dot)) info = candidate;
    }
  }
  if (!info) throw ParamError("unknown parameter '" + std::string(key) + "'");
  const std::string name(info->name);

  auto number = [&]() -> double {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
      throw ParamError(name + ": '" + std::string(text) + "' is not a number");
    return v;
  };

  switch (info->kind) {
    case ParamKind::engine:
      if (auto e = engine_from_string(text)) return {name, *e};
      throw ParamError(name + ": expected annealed or continuous");
    case ParamKind::boolean:
      if (text == "true" || text == "1" || text == "on") return {name, true};
      if (text == "false" || text == "0" || text == "off") return {name, false};
      throw ParamError(name + ": expected true or false");
    case ParamKind::optional_number:
      if (text == "default" || text == "null") return {name, std::monostate{}};
      return {name, number()};
    case ParamKind::number:
    case ParamKind::integer:
      return {name, number()};
  }
  throw ParamError("unreachable");
}

}  // namespace layoutlab
