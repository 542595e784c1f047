#include "layoutlab/session.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <deque>
#include <mutex>
#include <thread>
#include <vector>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "layoutlab/edit.hpp"
#include "layoutlab/error.hpp"

namespace layoutlab {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;
using Clock = std::chrono::steady_clock;

void check(const SessionConfig& config) {
  if (!(config.tick_rate > 0.0) || !(config.snapshot_rate > 0.0))
    throw std::invalid_argument("session rates must be positive");
  if (config.snapshot_rate > config.tick_rate)
    throw std::invalid_argument("snapshot_rate must not exceed tick_rate");
}

namespace {

struct Event {
  enum class Kind { connected, disconnected, message, bad_message };
  Kind kind;
  std::uint64_t client = 0;
  std::optional<WireMessage> message;
  std::string error;
};

/// Network thread -> tick loop.
class EventQueue {
 public:
  void push(Event e) {
    {
      std::lock_guard lock(mutex_);
      events_.push_back(std::move(e));
    }
    cv_.notify_one();
  }

  std::vector<Event> wait_until(Clock::time_point deadline) {
    std::unique_lock lock(mutex_);
    cv_.wait_until(lock, deadline, [&] { return !events_.empty(); });
    std::vector<Event> out(std::make_move_iterator(events_.begin()), std::make_move_iterator(events_.end()));
    events_.clear();
    return out;
  }

 private:
  std::mutex mutex_;
  std::condition_variable cv_;
  std::deque<Event> events_;
};

using Frame = std::shared_ptr<const std::string>;

class WsClient;

/// State shared with the network thread. Everything except `events` is
/// touched only from the io_context thread.
struct Hub {
  EventQueue events;
  std::shared_ptr<WsClient> active;
  std::uint64_t next_id = 1;
};

class WsClient : public std::enable_shared_from_this<WsClient> {
 public:
  WsClient(tcp::socket socket, Hub& hub) : ws_(std::move(socket)), hub_(hub), id_(hub.next_id++) {}

  std::uint64_t id() const { return id_; }

  void start(http::request<http::string_body> req) {
    beast::get_lowest_layer(ws_).expires_never();
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.text(true);
    ws_.async_accept(req, [self = shared_from_this()](beast::error_code ec) { self->on_accept(ec); });
  }

  /// Queue a frame. A newer snapshot replaces any snapshot not yet on the wire.
  void enqueue(Frame frame, bool snapshot) {
    if (closing_) return;
    if (snapshot) {
      std::erase_if(queue_, [](const Item& it) { return it.snapshot; });
    }
    queue_.push_back({std::move(frame), snapshot});
    write_next();
  }

  void close_after_flush() {
    close_requested_ = true;
    write_next();
  }

 private:
  struct Item {
    Frame frame;
    bool snapshot;
  };

  void on_accept(beast::error_code ec) {
    if (ec) return;
    if (hub_.active) {
      refused_ = true;
      enqueue(std::make_shared<const std::string>(
                  encode(wire::Error{"another client is already connected to this session"})),
              false);
      close_after_flush();
      read_next();
      return;
    }
    hub_.active = shared_from_this();
    hub_.events.push({Event::Kind::connected, id_, std::nullopt, {}});
    read_next();
  }

  void read_next() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      self->on_read(ec);
    });
  }

  void on_read(beast::error_code ec) {
    if (ec) {
      disconnected();
      return;
    }
    std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    if (!refused_) {
      // Ids are resolved by the tick loop, which owns the graph.
      try {
        hub_.events.push({Event::Kind::message, id_, decode(text), {}});
      } catch (const DecodeError& e) {
        hub_.events.push({Event::Kind::bad_message, id_, std::nullopt, e.what()});
      }
    }
    read_next();
  }

  void write_next() {
    if (writing_ || closing_) return;
    if (queue_.empty()) {
      if (close_requested_) {
        closing_ = true;
        ws_.async_close(websocket::close_code::normal,
                        [self = shared_from_this()](beast::error_code) {});
      }
      return;
    }
    writing_ = true;
    in_flight_ = queue_.front().frame;
    queue_.pop_front();
    ws_.async_write(net::buffer(*in_flight_), [self = shared_from_this()](beast::error_code ec, std::size_t) {
      self->writing_ = false;
      self->in_flight_.reset();
      if (ec) {
        self->queue_.clear();
        return;
      }
      self->write_next();
    });
  }

  void disconnected() {
    if (gone_) return;
    gone_ = true;
    queue_.clear();
    if (hub_.active.get() == this) {
      hub_.active.reset();
      hub_.events.push({Event::Kind::disconnected, id_, std::nullopt, {}});
    }
  }

  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  Hub& hub_;
  std::uint64_t id_;
  std::deque<Item> queue_;
  Frame in_flight_;
  bool writing_ = false;
  bool close_requested_ = false;
  bool closing_ = false;
  bool refused_ = false;
  bool gone_ = false;
};

class HttpConnection : public std::enable_shared_from_this<HttpConnection> {
 public:
  HttpConnection(tcp::socket socket, Hub& hub) : stream_(std::move(socket)), hub_(hub) {}

  void start() {
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(stream_, buffer_, req_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      self->on_read(ec);
    });
  }

 private:
  void on_read(beast::error_code ec) {
    if (ec) return;
    const std::string target(req_.target());
    if (websocket::is_upgrade(req_)) {
      if (target == "/ws") {
        std::make_shared<WsClient>(stream_.release_socket(), hub_)->start(std::move(req_));
        return;
      }
      respond(http::status::not_found, "text/plain", "not found\n");
      return;
    }
    if (target == "/") {
      if (req_.method() != http::verb::get && req_.method() != http::verb::head) {
        respond(http::status::method_not_allowed, "text/plain", "method not allowed\n");
        return;
      }
      respond(http::status::ok, "text/html; charset=utf-8", std::string(viewer_page()));
      return;
    }
    respond(http::status::not_found, "text/plain", "not found\n");
  }

  void respond(http::status status, const char* type, std::string body) {
    auto res = std::make_shared<http::response<http::string_body>>(status, req_.version());
    res->set(http::field::server, "layoutlab");
    res->set(http::field::content_type, type);
    res->set(http::field::cache_control, "no-store");
    res->keep_alive(false);
    res->body() = std::move(body);
    res->prepare_payload();
    http::async_write(stream_, *res, [self = shared_from_this(), res](beast::error_code, std::size_t) {
      beast::error_code ignored;
      self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
    });
  }

  beast::tcp_stream stream_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
  Hub& hub_;
};

}  // namespace

struct SessionServer::Impl {
  // Declared first so it is destroyed last.
  net::io_context ioc{1};
  tcp::acceptor acceptor{ioc};
  Hub hub;
  std::thread io_thread;
  std::atomic<bool> ran{false};

  const Graph& graph;
  SimParams params;
  std::uint64_t seed;
  SessionConfig config;
  std::uint16_t port = 0;
  std::string url;

  Impl(const Graph& g, SimParams p, std::uint64_t s, SessionConfig c)
      : graph(g), params(std::move(p)), seed(s), config(std::move(c)) {}

  ~Impl() {
    ioc.stop();
    if (io_thread.joinable()) io_thread.join();
  }

  void log(std::string_view line) const {
    if (config.log) config.log(line);
  }

  void bind() {
    beast::error_code ec;
    const tcp::endpoint endpoint(net::ip::address_v4::loopback(), config.port);
    acceptor.open(endpoint.protocol(), ec);
    if (!ec) acceptor.set_option(net::socket_base::reuse_address(true), ec);
    if (!ec) acceptor.bind(endpoint, ec);
    if (!ec) acceptor.listen(net::socket_base::max_listen_connections, ec);
    if (ec)
      throw SessionError("cannot listen on 127.0.0.1:" + std::to_string(config.port) + ": " + ec.message());
    port = acceptor.local_endpoint().port();
    url = "http://127.0.0.1:" + std::to_string(port) + "/";
    accept_next();
    io_thread = std::thread([this] { ioc.run(); });
  }

  void accept_next() {
    acceptor.async_accept(ioc, [this](beast::error_code ec, tcp::socket socket) {
      if (ec) {
        if (ec == net::error::operation_aborted || !acceptor.is_open()) return;
      } else {
        std::make_shared<HttpConnection>(std::move(socket), hub)->start();
      }
      accept_next();
    });
  }

  void send(const WireMessage& msg) {
    auto frame = std::make_shared<const std::string>(encode(msg));
    const bool snapshot = std::holds_alternative<wire::Positions>(msg);
    net::post(ioc, [this, frame, snapshot] {
      if (hub.active) hub.active->enqueue(frame, snapshot);
    });
  }

  void close_client() {
    net::post(ioc, [this] {
      if (hub.active) hub.active->close_after_flush();
    });
  }

  SessionResult run();
};

namespace {

Selection resolve(const Graph& graph, const std::vector<std::string>& ids) {
  std::vector<std::size_t> idx;
  idx.reserve(ids.size());
  for (const auto& id : ids) {
    auto i = graph.find(id);
    if (!i) throw std::invalid_argument("unknown node id \"" + id + "\"");
    idx.push_back(*i);
  }
  return Selection(idx, graph.node_count());
}

LayoutState apply_edit(const Graph& graph, LayoutState state, const WireMessage& msg) {
  if (const auto* m = std::get_if<wire::EditTranslate>(&msg))
    return translate_selection(std::move(state), resolve(graph, m->ids), {m->dx, m->dy});
  if (const auto* m = std::get_if<wire::EditRotate>(&msg))
    return rotate_selection(std::move(state), resolve(graph, m->ids), m->angle_rad, m->pivot);
  if (const auto* m = std::get_if<wire::SetPinned>(&msg))
    return set_pinned(std::move(state), resolve(graph, m->ids), m->pinned);
  return state;
}

}  // namespace

SessionResult SessionServer::Impl::run() {
  if (ran.exchange(true)) throw std::logic_error("SessionServer::run called twice");

  Simulation sim(graph, params, seed);
  SessionPhase phase = config.initial_phase;
  std::uint64_t seq = 0;
  bool client = false;
  bool dirty = false;

  const auto tick_period = std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(1.0 / config.tick_rate));
  const auto snapshot_period =
      std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(1.0 / config.snapshot_rate));
  const auto idle_poll = std::chrono::milliseconds(250);

  Clock::time_point idle_since = Clock::now();
  Clock::time_point next_tick = Clock::now();
  Clock::time_point last_snapshot = Clock::now() - snapshot_period;

  auto publish = [&] {
    send(make_positions(++seq, sim.state()));
    last_snapshot = Clock::now();
    dirty = false;
  };
  auto report_error = [&](const std::string& what) {
    log(what);
    send(wire::Error{what});
  };
  auto ticking = [&] {
    return client && phase == SessionPhase::simulating &&
           !(sim.params().engine == Engine::annealed && sim.converged());
  };

  for (;;) {
    const auto now = Clock::now();
    Clock::time_point deadline = now + idle_poll;
    if (ticking()) deadline = std::min(deadline, next_tick);
    if (client && dirty) deadline = std::min(deadline, last_snapshot + snapshot_period);
    if (!client && config.idle_timeout) deadline = std::min(deadline, idle_since + *config.idle_timeout);

    for (auto& ev : hub.events.wait_until(deadline)) {
      switch (ev.kind) {
        case Event::Kind::connected:
          client = true;
          send(make_init(graph, sim.params(), phase));
          publish();
          next_tick = Clock::now();
          log("client connected");
          break;
        case Event::Kind::disconnected:
          client = false;
          idle_since = Clock::now();
          log("client disconnected");
          break;
        case Event::Kind::bad_message:
          report_error(ev.error);
          break;
        case Event::Kind::message: {
          const WireMessage& msg = *ev.message;
          auto result = transition(phase, msg);
          if (result.rejected()) {
            report_error(result.error);
            break;
          }
          bool finished = false;
          for (Action action : result.actions) {
            switch (action) {
              case Action::apply_params:
                try {
                  SimParams next = sim.params();
                  for (const auto& w : apply_patch(next, std::get<wire::SetParams>(msg).params)) log(w);
                  sim.set_params(next);
                } catch (const ParamError& e) {
                  report_error(e.what());
                }
                break;
              case Action::apply_edit:
                try {
                  sim.set_state(apply_edit(graph, sim.state(), msg));
                  dirty = true;
                } catch (const std::exception& e) {
                  report_error(std::string("edit rejected: ") + e.what());
                }
                break;
              case Action::start_ticking:
                next_tick = Clock::now();
                break;
              case Action::emit_output:
                publish();
                break;
              case Action::broadcast_phase:
                send(wire::Phase{result.phase});
                break;
              case Action::close:
                finished = true;
                break;
              case Action::stop_ticking:
                if (dirty && result.phase != SessionPhase::finished) publish();
                break;
              case Action::send_error:
                break;
            }
          }
          phase = result.phase;
          if (finished) {
            close_client();
            // Let the final frames drain before tearing the server down.
            const auto give_up = Clock::now() + std::chrono::seconds(2);
            bool gone = false;
            while (!gone && Clock::now() < give_up)
              for (auto& later : hub.events.wait_until(give_up))
                if (later.kind == Event::Kind::disconnected) gone = true;
            return {sim.state(), sim.params(), false};
          }
          break;
        }
      }
    }

    if (!client) {
      if (config.idle_timeout && Clock::now() >= idle_since + *config.idle_timeout) {
        if (!config.headless_ticks)
          throw SessionError("no client connected within the idle timeout", sim.state());
        log("no client connected; finishing headless");
        for (long t = 0; t < *config.headless_ticks; ++t)
          if (sim.step().converged) break;
        return {sim.state(), sim.params(), true};
      }
      continue;
    }

    if (ticking() && Clock::now() >= next_tick) {
      const LayoutState before = sim.state();
      try {
        sim.step();
        dirty = true;
      } catch (const SimulationError& e) {
        sim.set_state(before);
        phase = SessionPhase::paused;
        report_error(std::string("simulation paused: ") + e.what());
        send(wire::Phase{phase});
      }
      next_tick += tick_period;
      if (next_tick < Clock::now()) next_tick = Clock::now();
    }

    if (dirty && Clock::now() >= last_snapshot + snapshot_period) publish();
  }
}

SessionServer::SessionServer(const Graph& graph, SimParams params, std::uint64_t seed, SessionConfig config)
    : impl_(std::make_unique<Impl>(graph, std::move(params), seed, std::move(config))) {
  check(impl_->config);
  impl_->bind();
  if (impl_->config.open_browser) {
    const std::string cmd = "xdg-open '" + impl_->url + "' >/dev/null 2>&1 &";
    if (std::system(cmd.c_str()) != 0) impl_->log("could not open a browser; visit " + impl_->url);
  }
}

SessionServer::~SessionServer() = default;

std::uint16_t SessionServer::port() const { return impl_->port; }
const std::string& SessionServer::url() const { return impl_->url; }
SessionResult SessionServer::run() { return impl_->run(); }

SessionResult run_session(const Graph& graph, const SimParams& params, std::uint64_t seed,
                          const SessionConfig& config,
                          const std::function<void(const std::string& url)>& on_listening) {
  SessionServer server(graph, params, seed, config);
  if (on_listening) on_listening(server.url());
  else if (config.log) config.log("listening on " + server.url());
  return server.run();
}

}  // namespace layoutlab
