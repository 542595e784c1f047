#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "layoutlab/geometry.hpp"
#include "layoutlab/graph.hpp"
#include "layoutlab/params.hpp"
#include "layoutlab/simulation.hpp"

namespace layoutlab {

enum class SessionPhase { simulating, paused, editing, finished };

std::string_view to_string(SessionPhase phase);
std::optional<SessionPhase> phase_from_string(std::string_view name);

inline constexpr int kProtocolVersion = 1;

namespace wire {

// server -> client

struct InitNode {
  std::string id;
  double radius = 0.0;
  friend bool operator==(const InitNode&, const InitNode&) = default;
};
struct InitEdge {
  std::string source;
  std::string target;
  friend bool operator==(const InitEdge&, const InitEdge&) = default;
};
struct Init {
  std::vector<InitNode> nodes;
  std::vector<InitEdge> edges;
  SimParams params;
  SessionPhase phase = SessionPhase::simulating;
  friend bool operator==(const Init&, const Init&) = default;
};
struct Positions {
  std::uint64_t seq = 0;
  std::vector<double> xy;  // x0, y0, x1, y1, ...
  friend bool operator==(const Positions&, const Positions&) = default;
};
struct Phase {
  SessionPhase phase = SessionPhase::simulating;
  friend bool operator==(const Phase&, const Phase&) = default;
};
struct Error {
  std::string message;
  friend bool operator==(const Error&, const Error&) = default;
};

// client -> server

struct SetParams {
  ParamPatch params;
  friend bool operator==(const SetParams&, const SetParams&) = default;
};
struct Pause {
  friend bool operator==(const Pause&, const Pause&) = default;
};
struct Resume {
  friend bool operator==(const Resume&, const Resume&) = default;
};
struct EnterEdit {
  friend bool operator==(const EnterEdit&, const EnterEdit&) = default;
};
struct ExitEdit {
  friend bool operator==(const ExitEdit&, const ExitEdit&) = default;
};
struct EditTranslate {
  std::vector<std::string> ids;
  double dx = 0.0;
  double dy = 0.0;
  friend bool operator==(const EditTranslate&, const EditTranslate&) = default;
};
struct EditRotate {
  std::vector<std::string> ids;
  double angle_rad = 0.0;
  std::optional<Vec2> pivot;
  friend bool operator==(const EditRotate&, const EditRotate&) = default;
};
struct SetPinned {
  std::vector<std::string> ids;
  bool pinned = false;
  friend bool operator==(const SetPinned&, const SetPinned&) = default;
};
struct Finish {
  friend bool operator==(const Finish&, const Finish&) = default;
};

}  // namespace wire

using WireMessage =
    std::variant<wire::Init, wire::Positions, wire::Phase, wire::Error, wire::SetParams, wire::Pause,
                 wire::Resume, wire::EnterEdit, wire::ExitEdit, wire::EditTranslate, wire::EditRotate,
                 wire::SetPinned, wire::Finish>;

/// The "type" discriminant of a message.
std::string_view message_type(const WireMessage& msg);
bool is_client_message(const WireMessage& msg);

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One compact JSON object, "type" first. Integral doubles are written
/// without a fractional part; all others use round-trip precision.
std::string encode(const WireMessage& msg);

/// Inverse of encode. Unknown top-level fields are ignored. When `graph` is
/// given, node ids must resolve against it and positions must carry 2N
/// numbers. Throws DecodeError.
WireMessage decode(std::string_view text, const Graph* graph = nullptr);

wire::Init make_init(const Graph& graph, const SimParams& params, SessionPhase phase);
wire::Positions make_positions(std::uint64_t seq, const LayoutState& state);

nlohmann::ordered_json params_to_json(const SimParams& params);
/// Every key must name a field and carry a value of the field's kind.
ParamPatch params_patch_from_json(const nlohmann::ordered_json& obj);

enum class Action {
  start_ticking,
  stop_ticking,
  apply_params,
  apply_edit,
  broadcast_phase,
  emit_output,
  close,
  send_error,
};

struct TransitionResult {
  SessionPhase phase;
  std::vector<Action> actions;
  std::string error;  // nonempty on rejection

  bool rejected() const { return !error.empty(); }
};

/// Session state machine. Total: every (phase, message) pair yields either a
/// new phase or a rejection that leaves the phase unchanged.
TransitionResult transition(SessionPhase phase, const WireMessage& msg);

}  // namespace layoutlab
