#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "benefit/engine.hpp"

namespace httplib {
class Server;
}

namespace benefit {

struct ServiceOptions {
  double snapshot_hz = 10.0;
  bool realtime = true;    // false: nothing ticks unless World::advance is called
  std::string trace_path;  // when set, applied events are appended here as JSON lines
};

// Thread-safe owner of the engine. Events queue up and are applied, in
// arrival order, right before the next step; every mutation happens under
// one mutex. Snapshots go out as immutable JSON strings.
class World {
 public:
  World(Engine engine, ServiceOptions opts);

  // Queues an event and returns the tick it will be applied at. The event's
  // own tick field is ignored.
  std::uint64_t post(SimEvent e);

  // Flushes the queue, resets the world and returns the new tick (0).
  std::uint64_t reset();

  // Applies queued events and steps, `ticks` times, publishing snapshots on
  // the configured cadence.
  void advance(std::uint64_t ticks = 1);

  // Fresh snapshot of the current state.
  std::string state_json() const;
  std::string config_json() const;
  std::vector<SimEvent> trace() const;
  std::uint64_t tick() const;
  SimState state() const;
  double dt() const;
  bool realtime() const noexcept { return opts_.realtime; }

  struct Published {
    std::uint64_t seq = 0;
    std::uint64_t tick = 0;
    std::shared_ptr<const std::string> json;
  };
  Published latest() const;

  // Blocks until a snapshot newer than `after_seq` exists, the timeout
  // passes, or shutdown() is called. Only the newest snapshot is ever
  // handed out, so a slow reader skips intermediate ones.
  std::optional<Published> wait_newer(std::uint64_t after_seq, std::chrono::milliseconds timeout) const;

  void shutdown();
  bool stopping() const noexcept { return stopping_.load(); }

 private:
  void publish_locked();
  void record_locked(const SimEvent& e);
  void drain_locked();

  mutable std::mutex mu_;
  Engine engine_;
  ServiceOptions opts_;
  std::uint64_t publish_every_ = 1;
  std::vector<SimEvent> queue_;
  std::vector<SimEvent> trace_;

  mutable std::mutex pub_mu_;
  mutable std::condition_variable pub_cv_;
  Published latest_;
  std::atomic<bool> stopping_{false};
};

// HTTP front end:
//   GET  /state    current snapshot          GET /config  engine config
//   POST /events   event JSON -> ack         POST /reset  -> {"tick":0}
//   GET  /stream   server-sent snapshots     GET /trace   recorded JSON-lines trace
class Service {
 public:
  Service(Engine engine, ServiceOptions opts = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws ServiceError.
  int bind(const std::string& host, int port);
  // Starts the listener and, in realtime mode, the tick thread.
  void start();
  void stop();

  World& world() noexcept { return world_; }

 private:
  void install_routes();
  void tick_loop();

  World world_;
  std::unique_ptr<httplib::Server> server_;
  std::thread listener_;
  std::thread ticker_;
  std::atomic<bool> running_{false};
  bool bound_ = false;
};

// "host:port" or ":port" or "port". Throws ValidationError.
std::pair<std::string, int> parse_bind(const std::string& spec);

}  // namespace benefit
