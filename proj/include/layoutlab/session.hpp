#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "layoutlab/graph.hpp"
#include "layoutlab/params.hpp"
#include "layoutlab/protocol.hpp"
#include "layoutlab/simulation.hpp"

namespace layoutlab {

struct SessionConfig {
  std::uint16_t port = 0;  // 0 picks a free port
  bool open_browser = false;
  double snapshot_rate = 30.0;  // Hz
  double tick_rate = 60.0;      // Hz
  /// Give up (or fall back to headless) after this long without a client.
  std::optional<std::chrono::milliseconds> idle_timeout;
  /// Headless fallback budget used when idle_timeout elapses.
  std::optional<long> headless_ticks;
  SessionPhase initial_phase = SessionPhase::simulating;
  /// Status lines (URL, warnings); defaults to silence.
  std::function<void(std::string_view)> log;
};

/// Throws std::invalid_argument when rates are non-positive or
/// snapshot_rate > tick_rate.
void check(const SessionConfig& config);

struct SessionResult {
  LayoutState state;
  SimParams params;  // last applied
  bool headless = false;
};

class SessionError : public std::runtime_error {
 public:
  explicit SessionError(const std::string& what, std::optional<LayoutState> best = std::nullopt)
      : std::runtime_error(what), best_state_(std::move(best)) {}

  const std::optional<LayoutState>& best_state() const { return best_state_; }

 private:
  std::optional<LayoutState> best_state_;
};

/// Loopback HTTP + WebSocket service for one live layout session.
///
///   GET /    viewer page
///   GET /ws  WebSocket, one JSON message per text frame
///
/// The constructor binds the port; `run` blocks until a client sends finish
/// (or the idle timeout resolves the session) and returns the final layout.
/// Exactly one client is served at a time; later connections receive an
/// error frame and are closed.
class SessionServer {
 public:
  /// Throws SessionError if the port cannot be bound.
  SessionServer(const Graph& graph, SimParams params, std::uint64_t seed, SessionConfig config);
  ~SessionServer();

  SessionServer(const SessionServer&) = delete;
  SessionServer& operator=(const SessionServer&) = delete;

  std::uint16_t port() const;
  /// `http://127.0.0.1:<port>/`
  const std::string& url() const;

  /// Runs the tick loop on the calling thread. Callable once.
  SessionResult run();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Binds, reports the URL through `on_listening` (or config.log), and runs.
SessionResult run_session(const Graph& graph, const SimParams& params, std::uint64_t seed,
                          const SessionConfig& config,
                          const std::function<void(const std::string& url)>& on_listening = {});

/// Self-contained HTML client served at `/`.
std::string_view viewer_page();

}  // namespace layoutlab
