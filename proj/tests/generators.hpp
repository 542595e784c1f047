#pragma once

// Random wire messages for round-trip testing.

#include <random>
#include <string>
#include <vector>

#include "layoutlab/protocol.hpp"

namespace support {

using namespace layoutlab;

inline std::string random_id(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces{"a", "b", "Z", "0", "9", "_", "-", " ", ",", "\"", "\\", "\n",
                                               "\t", "é", "中", "🙂", "node", "/", "{}", "null"};
  std::uniform_int_distribution<std::size_t> len(0, 6), pick(0, pieces.size() - 1);
  std::string out;
  for (auto k = len(rng); k > 0; --k) out += pieces[pick(rng)];
  return out;
}

/// Mix of small integers, wide-range reals and awkward values.
inline double random_number(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 5);
  switch (kind(rng)) {
    case 0: return double(std::uniform_int_distribution<int>(-1000, 1000)(rng));
    case 1: return std::uniform_real_distribution<double>(-1, 1)(rng);
    case 2: return std::uniform_real_distribution<double>(-1e6, 1e6)(rng);
    case 3: return std::ldexp(std::uniform_real_distribution<double>(0.5, 1)(rng),
                              std::uniform_int_distribution<int>(-1000, 1000)(rng));
    case 4: return 0.1 * std::uniform_int_distribution<int>(-100, 100)(rng);
    default: return 9007199254740993.0 * std::uniform_real_distribution<double>(-1, 1)(rng);
  }
}

inline std::vector<std::string> random_ids(std::mt19937_64& rng) {
  std::vector<std::string> ids(std::uniform_int_distribution<std::size_t>(0, 5)(rng));
  for (auto& id : ids) id = random_id(rng);
  return ids;
}

/// A value valid for the named field.
inline ParamValue random_param_value(const ParamInfo& info, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0, 1);
  switch (info.kind) {
    case ParamKind::engine: return unit(rng) < 0.5 ? Engine::annealed : Engine::continuous;
    case ParamKind::boolean: return unit(rng) < 0.5;
    case ParamKind::integer: return double(std::uniform_int_distribution<int>(0, 100)(rng));
    case ParamKind::optional_number:
      if (unit(rng) < 0.3) return std::monostate{};
      return unit(rng) * 5;
    case ParamKind::number: break;
  }
  const std::string name(info.name);
  if (name == "repulsion_strength" || name == "gravity_strength") return random_number(rng);
  if (name == "velocity_damping") return unit(rng) * 0.999;
  if (name == "theta") return unit(rng) * 2;
  if (name == "link_rest_length" || name == "time_step") return 0.01 + unit(rng) * 100;
  if (name.rfind("alpha", 0) == 0 || name == "center_strength") return unit(rng);
  return unit(rng) * 10;
}

inline SimParams random_params(std::mt19937_64& rng) {
  SimParams p;
  for (const auto& info : param_fields()) set_param(p, info.name, random_param_value(info, rng));
  return p;
}

inline ParamPatch random_patch(std::mt19937_64& rng) {
  ParamPatch patch;
  auto fields = param_fields();
  std::shuffle(fields.begin(), fields.end(), rng);
  fields.resize(std::uniform_int_distribution<std::size_t>(0, fields.size())(rng));
  for (const auto& info : fields) patch.set(std::string(info.name), random_param_value(info, rng));
  return patch;
}

inline SessionPhase random_phase(std::mt19937_64& rng) {
  return static_cast<SessionPhase>(std::uniform_int_distribution<int>(0, 3)(rng));
}

inline WireMessage random_message(std::mt19937_64& rng, std::size_t which) {
  switch (which % std::variant_size_v<WireMessage>) {
    case 0: {
      wire::Init m;
      m.nodes.resize(std::uniform_int_distribution<std::size_t>(0, 6)(rng));
      for (auto& n : m.nodes) n = {random_id(rng), std::abs(random_number(rng))};
      m.edges.resize(std::uniform_int_distribution<std::size_t>(0, 6)(rng));
      for (auto& e : m.edges) e = {random_id(rng), random_id(rng)};
      m.params = random_params(rng);
      m.phase = random_phase(rng);
      return m;
    }
    case 1: {
      wire::Positions m;
      m.seq = std::uniform_int_distribution<std::uint64_t>()(rng);
      m.xy.resize(2 * std::uniform_int_distribution<std::size_t>(0, 8)(rng));
      for (auto& v : m.xy) v = random_number(rng);
      return m;
    }
    case 2: return wire::Phase{random_phase(rng)};
    case 3: return wire::Error{random_id(rng)};
    case 4: return wire::SetParams{random_patch(rng)};
    case 5: return wire::Pause{};
    case 6: return wire::Resume{};
    case 7: return wire::EnterEdit{};
    case 8: return wire::ExitEdit{};
    case 9: return wire::EditTranslate{random_ids(rng), random_number(rng), random_number(rng)};
    case 10: {
      wire::EditRotate m{random_ids(rng), random_number(rng), std::nullopt};
      if (rng() % 2) m.pivot = Vec2{random_number(rng), random_number(rng)};
      return m;
    }
    case 11: return wire::SetPinned{random_ids(rng), rng() % 2 == 0};
    default: return wire::Finish{};
  }
}

}  // namespace support
