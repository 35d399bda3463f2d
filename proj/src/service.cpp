#include "benefit/service.hpp"

#include <fcntl.h>
#include <sys/socket.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include <httplib.h>

#include "benefit/errors.hpp"
#include "benefit/serialize.hpp"
#include "benefit/snapshot.hpp"

namespace benefit {

using nlohmann::json;

World::World(Engine engine, ServiceOptions opts) : engine_(std::move(engine)), opts_(std::move(opts)) {
  if (!(opts_.snapshot_hz > 0.0)) throw ConfigError("service: snapshot_hz must be positive");
  publish_every_ = std::max<std::uint64_t>(1, std::llround(1.0 / (opts_.snapshot_hz * engine_.config().dt)));
  std::lock_guard lock(mu_);
  publish_locked();
}

void World::publish_locked() {
  auto text = std::make_shared<const std::string>(snapshot_json(make_snapshot(engine_)));
  {
    std::lock_guard lock(pub_mu_);
    latest_ = {latest_.seq + 1, engine_.state().tick, std::move(text)};
  }
  pub_cv_.notify_all();
}

void World::record_locked(const SimEvent& e) {
  trace_.push_back(e);
  if (!opts_.trace_path.empty()) {
    std::ofstream out(opts_.trace_path, std::ios::app);
    append_trace_line(out, e);
  }
}

void World::drain_locked() {
  for (auto& e : queue_) {
    e.tick = engine_.state().tick;
    engine_.apply(e);
    record_locked(e);
  }
  queue_.clear();
}

std::uint64_t World::post(SimEvent e) {
  std::lock_guard lock(mu_);
  e.tick = engine_.state().tick;
  queue_.push_back(e);
  return e.tick;
}

std::uint64_t World::reset() {
  std::lock_guard lock(mu_);
  drain_locked();
  const SimEvent e{engine_.state().tick, EventKind::Reset, std::nullopt};
  engine_.apply(e);
  record_locked(e);
  publish_locked();
  return engine_.state().tick;
}

void World::advance(std::uint64_t ticks) {
  for (std::uint64_t i = 0; i < ticks; ++i) {
    std::lock_guard lock(mu_);
    drain_locked();
    engine_.step();
    if (engine_.state().tick % publish_every_ == 0) publish_locked();
  }
}

std::string World::state_json() const {
  std::lock_guard lock(mu_);
  return snapshot_json(make_snapshot(engine_));
}

std::string World::config_json() const {
  std::lock_guard lock(mu_);
  return json(engine_.config()).dump();
}

std::vector<SimEvent> World::trace() const {
  std::lock_guard lock(mu_);
  return trace_;
}

std::uint64_t World::tick() const {
  std::lock_guard lock(mu_);
  return engine_.state().tick;
}

SimState World::state() const {
  std::lock_guard lock(mu_);
  return engine_.state();
}

double World::dt() const { return engine_.config().dt; }

World::Published World::latest() const {
  std::lock_guard lock(pub_mu_);
  return latest_;
}

std::optional<World::Published> World::wait_newer(std::uint64_t after_seq, std::chrono::milliseconds timeout) const {
  std::unique_lock lock(pub_mu_);
  const bool fresh =
      pub_cv_.wait_for(lock, timeout, [&] { return stopping_.load() || latest_.seq > after_seq; });
  if (!fresh || latest_.seq <= after_seq) return std::nullopt;
  return latest_;
}

void World::shutdown() {
  {
    std::lock_guard lock(pub_mu_);
    stopping_ = true;
  }
  pub_cv_.notify_all();
}

std::pair<std::string, int> parse_bind(const std::string& spec) {
  std::string host = "127.0.0.1";
  std::string port_text = spec;
  if (auto colon = spec.rfind(':'); colon != std::string::npos) {
    if (colon > 0) host = spec.substr(0, colon);
    port_text = spec.substr(colon + 1);
  }
  int port = -1;
  std::istringstream in(port_text);
  if (!(in >> port) || !in.eof() || port < 0 || port > 65535) {
    throw ValidationError("bind: expected host:port, got '" + spec + "'");
  }
  return {host, port};
}

namespace {

void send_json(httplib::Response& res, int status, const std::string& body) {
  res.status = status;
  res.set_content(body, "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& kind, const std::string& reason) {
  send_json(res, status, json{{"error", kind}, {"reason", reason}}.dump());
}

}  // namespace

Service::Service(Engine engine, ServiceOptions opts)
    : world_(std::move(engine), std::move(opts)), server_(std::make_unique<httplib::Server>()) {
  // Only SO_REUSEADDR: the library default adds SO_REUSEPORT, which lets a
  // second server silently share a busy port.
  server_->set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    fcntl(sock, F_SETFD, FD_CLOEXEC);
  });
  install_routes();
}

Service::~Service() { stop(); }

void Service::install_routes() {
  auto& s = *server_;
  s.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                         {"Access-Control-Allow-Headers", "Content-Type"},
                         {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  s.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  s.Get("/state", [this](const httplib::Request&, httplib::Response& res) { send_json(res, 200, world_.state_json()); });
  s.Get("/config", [this](const httplib::Request&, httplib::Response& res) { send_json(res, 200, world_.config_json()); });

  s.Post("/events", [this](const httplib::Request& req, httplib::Response& res) {
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception& e) {
      return send_error(res, 400, "malformed_json", e.what());
    }
    try {
      std::vector<SimEvent> events;
      if (body.is_array()) {
        for (const auto& item : body) events.push_back(event_from_json(item, false));
      } else {
        events.push_back(event_from_json(body, false));
      }
      json acks = json::array();
      for (const auto& e : events) {
        if (e.kind == EventKind::Reset) {
          acks.push_back({{"accepted", true}, {"kind", "reset"}, {"tick", world_.reset()}});
        } else {
          acks.push_back({{"accepted", true}, {"kind", event_kind_label(e.kind)}, {"tick", world_.post(e)}});
        }
      }
      send_json(res, 202, body.is_array() ? acks.dump() : acks[0].dump());
    } catch (const ValidationError& e) {
      send_error(res, 422, "validation", e.what());
    }
  });

  s.Post("/reset", [this](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, json{{"accepted", true}, {"kind", "reset"}, {"tick", world_.reset()}}.dump());
  });

  s.Get("/trace", [this](const httplib::Request&, httplib::Response& res) {
    std::ostringstream out;
    write_trace(out, world_.trace());
    res.set_header("X-Benefit-Tick", std::to_string(world_.tick()));
    res.set_content(out.str(), "application/x-ndjson");
  });

  s.Get("/stream", [this](const httplib::Request& req, httplib::Response& res) {
    double hz = 0.0;
    if (req.has_param("hz")) {
      try {
        hz = std::stod(req.get_param_value("hz"));
      } catch (const std::exception&) {
        hz = -1.0;
      }
      if (!(hz > 0.0) || !std::isfinite(hz)) return send_error(res, 400, "validation", "hz must be positive");
    }
    const auto min_gap = hz > 0.0 ? std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                        std::chrono::duration<double>(1.0 / hz))
                                  : std::chrono::steady_clock::duration::zero();
    res.set_header("Cache-Control", "no-cache");
    res.set_chunked_content_provider(
        "text/event-stream",
        [this, min_gap, last_seq = std::uint64_t{0}, last_sent = std::chrono::steady_clock::time_point{}](
            std::size_t, httplib::DataSink& sink) mutable {
          if (world_.stopping()) return false;
          if (min_gap.count() > 0) {
            const auto due = last_sent + min_gap;
            if (std::chrono::steady_clock::now() < due) std::this_thread::sleep_until(due);
          }
          auto snap = world_.wait_newer(last_seq, std::chrono::milliseconds(500));
          if (world_.stopping()) return false;
          if (!snap) {
            static const std::string keepalive = ": keepalive\n\n";
            return sink.write(keepalive.data(), keepalive.size());
          }
          const std::string msg =
              "event: snapshot\nid: " + std::to_string(snap->seq) + "\ndata: " + *snap->json + "\n\n";
          if (!sink.write(msg.data(), msg.size())) return false;
          last_seq = snap->seq;
          last_sent = std::chrono::steady_clock::now();
          return true;
        });
  });
}

int Service::bind(const std::string& host, int port) {
  int bound = -1;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
  } else if (server_->bind_to_port(host, port)) {
    bound = port;
  }
  if (bound <= 0) {
    throw ServiceError("cannot listen on " + host + ":" + std::to_string(port) +
                       " (address in use or not available)");
  }
  bound_ = true;
  return bound;
}

void Service::start() {
  if (!bound_) throw ServiceError("service: bind() before start()");
  if (running_.exchange(true)) return;
  listener_ = std::thread([this] { server_->listen_after_bind(); });
  // stop() is a no-op on a server that has not entered its accept loop yet
  server_->wait_until_ready();
  if (world_.realtime()) ticker_ = std::thread([this] { tick_loop(); });
}

void Service::tick_loop() {
  const auto period = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double>(world_.dt()));
  auto next = std::chrono::steady_clock::now() + period;
  while (running_) {
    std::this_thread::sleep_until(next);
    if (!running_) break;
    world_.advance(1);
    next += period;
    // After a stall, drop the backlog instead of bursting to catch up.
    if (const auto now = std::chrono::steady_clock::now(); next < now - 10 * period) next = now + period;
  }
}

void Service::stop() {
  if (!running_.exchange(false)) {
    world_.shutdown();
    // The library only closes the listening socket from a running server.
    if (bound_) {
      std::thread t([this] { server_->listen_after_bind(); });
      server_->wait_until_ready();
      server_->stop();
      t.join();
      bound_ = false;
    }
    return;
  }
  world_.shutdown();
  server_->stop();
  if (listener_.joinable()) listener_.join();
  if (ticker_.joinable()) ticker_.join();
  bound_ = false;
}

}  // namespace benefit
