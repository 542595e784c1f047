#include "layoutlab/protocol.hpp"

#include <cmath>

#include "layoutlab/error.hpp"

namespace layoutlab {

namespace {

using json = nlohmann::ordered_json;
using nlohmann::ordered_json;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kExactIntLimit = 9007199254740992.0;  // 2^53

ordered_json number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < kExactIntLimit)
    return static_cast<std::int64_t>(v);
  return v;
}

ordered_json param_value_json(const ParamValue& value) {
  return std::visit(overloaded{
                        [](std::monostate) -> ordered_json { return nullptr; },
                        [](bool b) -> ordered_json { return b; },
                        [](double d) -> ordered_json { return number(d); },
                        [](Engine e) -> ordered_json { return std::string(to_string(e)); },
                    },
                    value);
}

ordered_json ids_json(const std::vector<std::string>& ids) {
  ordered_json out = ordered_json::array();
  for (const auto& id : ids) out.push_back(id);
  return out;
}

// Field readers. `type` is only used for messages.

const json& field(const json& obj, const char* key, std::string_view type) {
  auto it = obj.find(key);
  if (it == obj.end()) throw DecodeError(std::string(type) + ": missing field \"" + key + "\"");
  return *it;
}

double read_number(const json& v, std::string_view where) {
  if (!v.is_number()) throw DecodeError(std::string(where) + ": expected a number");
  double d = v.get<double>();
  if (!std::isfinite(d)) throw DecodeError(std::string(where) + ": number out of range");
  return d;
}

double number_field(const json& obj, const char* key, std::string_view type) {
  return read_number(field(obj, key, type), std::string(type) + "." + key);
}

std::string string_field(const json& obj, const char* key, std::string_view type) {
  const auto& v = field(obj, key, type);
  if (!v.is_string()) throw DecodeError(std::string(type) + "." + key + ": expected a string");
  return v.get<std::string>();
}

bool bool_field(const json& obj, const char* key, std::string_view type) {
  const auto& v = field(obj, key, type);
  if (!v.is_boolean()) throw DecodeError(std::string(type) + "." + key + ": expected a boolean");
  return v.get<bool>();
}

std::vector<std::string> ids_field(const json& obj, std::string_view type, const Graph* graph) {
  const auto& v = field(obj, "ids", type);
  if (!v.is_array()) throw DecodeError(std::string(type) + ".ids: expected an array");
  std::vector<std::string> ids;
  ids.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_string()) throw DecodeError(std::string(type) + ".ids: expected strings");
    ids.push_back(e.get<std::string>());
    if (graph && !graph->find(ids.back()))
      throw DecodeError(std::string(type) + ".ids: unknown node id \"" + ids.back() + "\"");
  }
  return ids;
}

SessionPhase phase_field(const json& obj, std::string_view type) {
  auto name = string_field(obj, "phase", type);
  auto phase = phase_from_string(name);
  if (!phase) throw DecodeError(std::string(type) + ".phase: unknown phase \"" + name + "\"");
  return *phase;
}

}  // namespace

std::string_view to_string(SessionPhase phase) {
  switch (phase) {
    case SessionPhase::simulating: return "simulating";
    case SessionPhase::paused: return "paused";
    case SessionPhase::editing: return "editing";
    case SessionPhase::finished: return "finished";
  }
  return "?";
}

std::optional<SessionPhase> phase_from_string(std::string_view name) {
  for (auto p : {SessionPhase::simulating, SessionPhase::paused, SessionPhase::editing, SessionPhase::finished})
    if (to_string(p) == name) return p;
  return std::nullopt;
}

std::string_view message_type(const WireMessage& msg) {
  return std::visit(overloaded{
                        [](const wire::Init&) { return "init"; },
                        [](const wire::Positions&) { return "positions"; },
                        [](const wire::Phase&) { return "phase"; },
                        [](const wire::Error&) { return "error"; },
                        [](const wire::SetParams&) { return "set_params"; },
                        [](const wire::Pause&) { return "pause"; },
                        [](const wire::Resume&) { return "resume"; },
                        [](const wire::EnterEdit&) { return "enter_edit"; },
                        [](const wire::ExitEdit&) { return "exit_edit"; },
                        [](const wire::EditTranslate&) { return "edit_translate"; },
                        [](const wire::EditRotate&) { return "edit_rotate"; },
                        [](const wire::SetPinned&) { return "set_pinned"; },
                        [](const wire::Finish&) { return "finish"; },
                    },
                    msg);
}

bool is_client_message(const WireMessage& msg) { return msg.index() >= 4; }

nlohmann::ordered_json params_to_json(const SimParams& params) {
  ordered_json out = ordered_json::object();
  for (const auto& info : param_fields()) out[std::string(info.name)] = param_value_json(get_param(params, info.name));
  return out;
}

ParamPatch params_patch_from_json(const nlohmann::ordered_json& obj) {
  if (!obj.is_object()) throw DecodeError("params: expected an object");
  ParamPatch patch;
  for (const auto& [key, v] : obj.items()) {
    const ParamInfo* info = find_param(key);
    if (!info) throw DecodeError("params: unknown parameter \"" + key + "\"");
    const std::string where = "params." + key;
    switch (info->kind) {
      case ParamKind::engine: {
        if (!v.is_string()) throw DecodeError(where + ": expected a string");
        auto e = engine_from_string(v.get<std::string>());
        if (!e) throw DecodeError(where + ": unknown engine \"" + v.get<std::string>() + "\"");
        patch.set(key, *e);
        break;
      }
      case ParamKind::boolean:
        if (!v.is_boolean()) throw DecodeError(where + ": expected a boolean");
        patch.set(key, v.get<bool>());
        break;
      case ParamKind::optional_number:
        if (v.is_null()) {
          patch.set(key, std::monostate{});
          break;
        }
        [[fallthrough]];
      case ParamKind::number:
      case ParamKind::integer:
        patch.set(key, read_number(v, where));
        break;
    }
  }
  return patch;
}

std::string encode(const WireMessage& msg) {
  ordered_json out;
  out["type"] = std::string(message_type(msg));
  std::visit(overloaded{
                 [&](const wire::Init& m) {
                   out["v"] = kProtocolVersion;
                   auto& nodes = out["nodes"] = ordered_json::array();
                   for (const auto& n : m.nodes) nodes.push_back({{"id", n.id}, {"radius", number(n.radius)}});
                   auto& edges = out["edges"] = ordered_json::array();
                   for (const auto& e : m.edges) edges.push_back({{"source", e.source}, {"target", e.target}});
                   out["params"] = params_to_json(m.params);
                   out["phase"] = std::string(to_string(m.phase));
                 },
                 [&](const wire::Positions& m) {
                   out["seq"] = m.seq;
                   auto& xy = out["xy"] = ordered_json::array();
                   for (double v : m.xy) xy.push_back(number(v));
                 },
                 [&](const wire::Phase& m) { out["phase"] = std::string(to_string(m.phase)); },
                 [&](const wire::Error& m) { out["message"] = m.message; },
                 [&](const wire::SetParams& m) {
                   auto& p = out["params"] = ordered_json::object();
                   for (const auto& [key, value] : m.params.entries) p[key] = param_value_json(value);
                 },
                 [&](const wire::EditTranslate& m) {
                   out["ids"] = ids_json(m.ids);
                   out["dx"] = number(m.dx);
                   out["dy"] = number(m.dy);
                 },
                 [&](const wire::EditRotate& m) {
                   out["ids"] = ids_json(m.ids);
                   out["angle_rad"] = number(m.angle_rad);
                   if (m.pivot) out["pivot"] = ordered_json::array({number(m.pivot->x), number(m.pivot->y)});
                 },
                 [&](const wire::SetPinned& m) {
                   out["ids"] = ids_json(m.ids);
                   out["pinned"] = m.pinned;
                 },
                 [](const auto&) {},
             },
             msg);
  return out.dump();
}

WireMessage decode(std::string_view text, const Graph* graph) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DecodeError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DecodeError("message must be a JSON object");
  auto type_it = doc.find("type");
  if (type_it == doc.end()) throw DecodeError("missing \"type\"");
  if (!type_it->is_string()) throw DecodeError("\"type\" must be a string");
  const std::string type = type_it->get<std::string>();

  if (type == "init") {
    wire::Init m;
    const auto& nodes = field(doc, "nodes", type);
    const auto& edges = field(doc, "edges", type);
    if (!nodes.is_array() || !edges.is_array()) throw DecodeError("init: nodes and edges must be arrays");
    for (const auto& n : nodes) {
      if (!n.is_object()) throw DecodeError("init.nodes: expected objects");
      m.nodes.push_back({string_field(n, "id", "init.nodes"), number_field(n, "radius", "init.nodes")});
    }
    for (const auto& e : edges) {
      if (!e.is_object()) throw DecodeError("init.edges: expected objects");
      m.edges.push_back({string_field(e, "source", "init.edges"), string_field(e, "target", "init.edges")});
    }
    try {
      apply_patch(m.params, params_patch_from_json(field(doc, "params", type)));
    } catch (const ParamError& e) {
      throw DecodeError(std::string("init.params: ") + e.what());
    }
    m.phase = phase_field(doc, type);
    return m;
  }
  if (type == "positions") {
    wire::Positions m;
    const auto& seq = field(doc, "seq", type);
    if (!seq.is_number_unsigned())
      throw DecodeError("positions.seq: expected a non-negative integer");
    m.seq = seq.get<std::uint64_t>();
    const auto& xy = field(doc, "xy", type);
    if (!xy.is_array()) throw DecodeError("positions.xy: expected an array");
    m.xy.reserve(xy.size());
    for (const auto& v : xy) m.xy.push_back(read_number(v, "positions.xy"));
    if (m.xy.size() % 2 != 0) throw DecodeError("positions.xy: odd length");
    if (graph && m.xy.size() != 2 * graph->node_count())
      throw DecodeError("positions.xy: expected " + std::to_string(2 * graph->node_count()) + " numbers");
    return m;
  }
  if (type == "phase") return wire::Phase{phase_field(doc, type)};
  if (type == "error") return wire::Error{string_field(doc, "message", type)};
  if (type == "set_params") return wire::SetParams{params_patch_from_json(field(doc, "params", type))};
  if (type == "pause") return wire::Pause{};
  if (type == "resume") return wire::Resume{};
  if (type == "enter_edit") return wire::EnterEdit{};
  if (type == "exit_edit") return wire::ExitEdit{};
  if (type == "finish") return wire::Finish{};
  if (type == "edit_translate") {
    wire::EditTranslate m;
    m.ids = ids_field(doc, type, graph);
    m.dx = number_field(doc, "dx", type);
    m.dy = number_field(doc, "dy", type);
    return m;
  }
  if (type == "edit_rotate") {
    wire::EditRotate m;
    m.ids = ids_field(doc, type, graph);
    m.angle_rad = number_field(doc, "angle_rad", type);
    if (auto it = doc.find("pivot"); it != doc.end() && !it->is_null()) {
      if (!it->is_array() || it->size() != 2) throw DecodeError("edit_rotate.pivot: expected [x, y]");
      m.pivot = Vec2{read_number((*it)[0], "edit_rotate.pivot"), read_number((*it)[1], "edit_rotate.pivot")};
    }
    return m;
  }
  if (type == "set_pinned") {
    wire::SetPinned m;
    m.ids = ids_field(doc, type, graph);
    m.pinned = bool_field(doc, "pinned", type);
    return m;
  }
  throw DecodeError("unknown message type \"" + type + "\"");
}

wire::Init make_init(const Graph& graph, const SimParams& params, SessionPhase phase) {
  wire::Init m;
  m.params = params;
  m.phase = phase;
  m.nodes.reserve(graph.node_count());
  for (const auto& n : graph.nodes()) m.nodes.push_back({n.id, n.radius});
  m.edges.reserve(graph.edge_count());
  for (const auto& e : graph.edges()) m.edges.push_back({graph.nodes()[e.source].id, graph.nodes()[e.target].id});
  return m;
}

wire::Positions make_positions(std::uint64_t seq, const LayoutState& state) {
  wire::Positions m;
  m.seq = seq;
  m.xy.reserve(2 * state.size());
  for (const auto& p : state.positions) {
    m.xy.push_back(p.x);
    m.xy.push_back(p.y);
  }
  return m;
}

TransitionResult transition(SessionPhase phase, const WireMessage& msg) {
  using P = SessionPhase;
  using A = Action;
  auto reject = [&](std::string why) { return TransitionResult{phase, {A::send_error}, std::move(why)}; };

  if (!is_client_message(msg))
    return reject("'" + std::string(message_type(msg)) + "' is not a client message");
  if (phase == P::finished) return reject("session has finished");

  const auto type = message_type(msg);
  const auto not_now = [&] {
    return reject("'" + std::string(type) + "' is not allowed while " + std::string(to_string(phase)));
  };

  if (std::holds_alternative<wire::Finish>(msg))
    return {P::finished, {A::stop_ticking, A::emit_output, A::broadcast_phase, A::close}, {}};
  if (std::holds_alternative<wire::SetParams>(msg)) return {phase, {A::apply_params}, {}};

  const bool is_edit = std::holds_alternative<wire::EditTranslate>(msg) ||
                       std::holds_alternative<wire::EditRotate>(msg) ||
                       std::holds_alternative<wire::SetPinned>(msg);

  switch (phase) {
    case P::simulating:
      if (std::holds_alternative<wire::Pause>(msg)) return {P::paused, {A::stop_ticking, A::broadcast_phase}, {}};
      if (std::holds_alternative<wire::EnterEdit>(msg))
        return {P::editing, {A::stop_ticking, A::broadcast_phase}, {}};
      return not_now();
    case P::paused:
      if (std::holds_alternative<wire::Resume>(msg))
        return {P::simulating, {A::start_ticking, A::broadcast_phase}, {}};
      if (std::holds_alternative<wire::EnterEdit>(msg)) return {P::editing, {A::broadcast_phase}, {}};
      return not_now();
    case P::editing:
      if (is_edit) return {P::editing, {A::apply_edit}, {}};
      if (std::holds_alternative<wire::ExitEdit>(msg)) return {P::paused, {A::broadcast_phase}, {}};
      if (std::holds_alternative<wire::Resume>(msg))
        return {P::simulating, {A::start_ticking, A::broadcast_phase}, {}};
      return not_now();
    case P::finished:
      break;
  }
  return reject("session has finished");
}

}  // namespace layoutlab
