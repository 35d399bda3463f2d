#include <atomic>
#include <chrono>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "benefit/errors.hpp"
#include "benefit/genmodel.hpp"
#include "benefit/serialize.hpp"
#include "benefit/service.hpp"
#include "benefit/simulate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace benefit;

namespace {

std::atomic<bool> g_interrupted{false};

void on_signal(int) { g_interrupted = true; }

int fail(int code, const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << std::endl;
  return code;
}

EngineConfig config_from(const std::string& path, std::optional<std::uint64_t> seed) {
  EngineConfig cfg = path.empty() ? EngineConfig{} : load_config(path);
  if (seed) cfg.seed = *seed;
  cfg.validate();
  return cfg;
}

void ensure_parent(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "Engine config JSON (defaults built in)");
  cmd->add_option("--seed", c.seed, "Master seed, overrides the config");
}

int cmd_serve(const Common& c, const std::string& bind, double hz, const std::string& trace_out) {
  const auto [host, port] = parse_bind(bind);
  ServiceOptions opts;
  opts.snapshot_hz = hz;
  opts.trace_path = trace_out;
  if (!trace_out.empty()) {
    ensure_parent(trace_out);
    std::ofstream(trace_out, std::ios::trunc);
  }
  Service service(Engine(config_from(c.config, c.seed)), opts);
  const int bound = service.bind(host, port);
  service.start();
  std::cout << json{{"listening", fmt::format("http://{}:{}", host, bound)}, {"port", bound}}.dump() << std::endl;

  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  while (!g_interrupted) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  service.stop();
  std::cout << json{{"stopped", true}, {"tick", service.world().tick()}}.dump() << std::endl;
  return 0;
}

int cmd_simulate(const Common& c, const std::string& policy_path, std::optional<double> duration,
                 const std::string& out_dir, std::uint64_t every) {
  PolicyScript policy = load_policy(policy_path);
  if (duration) policy.duration = *duration;
  policy.validate();
  Engine engine(config_from(c.config, c.seed));
  const SimulationResult r = run_simulation(engine, policy, every);

  const json summary = {{"policy", policy.name},
                        {"ticks", r.ticks},
                        {"mean_ei", r.mean_ei},
                        {"reached_crisis", r.reached_crisis},
                        {"went_extinct", r.went_extinct},
                        {"dispensed", r.final_state.ledger.dispensed},
                        {"state_hash", hash_hex(state_hash(r.final_state))}};
  if (out_dir.empty()) {
    write_csv(std::cout, r.rows);
    std::cerr << summary.dump() << std::endl;
    return 0;
  }
  fs::create_directories(out_dir);
  std::ofstream csv(fs::path(out_dir) / "timeseries.csv");
  write_csv(csv, r.rows);
  std::ofstream(fs::path(out_dir) / "final_state.json") << json(r.final_state).dump(2) << '\n';
  std::ofstream trace(fs::path(out_dir) / "trace.jsonl");
  write_trace(trace, r.trace);
  std::cout << summary.dump() << std::endl;
  return 0;
}

int cmd_fit(const std::string& data_dir, const std::string& out_dir, const FitOptions& opts, double max_mse) {
  std::vector<ResponseCurveDataset> datasets;
  for (Factor f : kAllFactors) {
    const fs::path p = fs::path(data_dir) / (std::string(factor_label(f)) + ".json");
    if (!fs::exists(p)) throw ConfigError("missing dataset '" + p.string() + "'");
    datasets.push_back(load_dataset(p.string()));
  }
  const std::vector<FitResult> results = fit_all(datasets, opts);
  fs::create_directories(out_dir);
  bool ok = true;
  json report = json::array();
  for (const auto& r : results) {
    const std::string& label = r.model.factor;
    save_model(r.model, (fs::path(out_dir) / (label + ".json")).string());
    const bool pass = r.mse <= max_mse;
    ok = ok && pass;
    report.push_back({{"factor", label}, {"mse", r.mse}, {"threshold", max_mse}, {"pass", pass}});
    std::cout << report.back().dump() << std::endl;
  }
  if (!ok) return fail(6, "fit_threshold", "one or more factors exceeded the MSE threshold");
  return 0;
}

int cmd_replay(const Common& c, const std::string& trace_path, std::optional<std::uint64_t> ticks,
               std::uint64_t every, const std::string& out) {
  const std::vector<SimEvent> trace = read_trace_file(trace_path);
  std::uint64_t end = 0;
  for (const auto& e : trace) end = e.kind == EventKind::Reset ? 0 : std::max(end, e.tick);
  const EngineConfig cfg = config_from(c.config, c.seed);
  const ReplayResult r = run_replay(cfg, trace, ticks.value_or(end), out.empty() ? 0 : every);
  if (!out.empty()) {
    ensure_parent(out);
    std::ofstream dump(out);
    for (const auto& s : r.snapshots) dump << canonical_state(s) << '\n';
  }
  std::cout << json{{"tick", r.final_state.tick},
                    {"events", trace.size()},
                    {"snapshots", r.snapshots.size()},
                    {"state_hash", hash_hex(state_hash(r.final_state))}}
                   .dump()
            << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benefit Game seaweed ecosystem simulator"};
  app.require_subcommand(1);

  Common common;

  auto* serve = app.add_subcommand("serve", "Run the world behind the HTTP API");
  add_common(serve, common);
  std::string bind = "127.0.0.1:8080";
  double hz = 10.0;
  std::string trace_out;
  serve->add_option("--bind", bind, "host:port to listen on")->capture_default_str();
  serve->add_option("--snapshot-hz", hz, "Stream snapshots per second")->capture_default_str();
  serve->add_option("--trace-out", trace_out, "Record applied events to this JSON-lines file");

  auto* simulate = app.add_subcommand("simulate", "Run a scripted policy headless");
  add_common(simulate, common);
  std::string policy;
  std::optional<double> duration;
  std::string sim_out;
  std::uint64_t every = 10;
  simulate->add_option("--policy", policy, "Policy JSON")->required()->check(CLI::ExistingFile);
  simulate->add_option("--duration", duration, "Seconds of simulated time, overrides the policy");
  simulate->add_option("--out", sim_out, "Output directory (CSV to stdout when omitted)");
  simulate->add_option("--every", every, "CSV row every N ticks")->capture_default_str()->check(CLI::PositiveNumber);

  auto* fit = app.add_subcommand("fit", "Fit the per-factor MLPs to the response curves");
  std::string data_dir = std::string(BENEFIT_DATA_DIR) + "/curves";
  std::string model_out = std::string(BENEFIT_DATA_DIR) + "/models";
  FitOptions fopts;
  double max_mse = 1e-3;
  fit->add_option("--data", data_dir, "Directory of <factor>.json curves")->capture_default_str();
  fit->add_option("--out", model_out, "Directory to write model JSON")->capture_default_str();
  fit->add_option("--hidden", fopts.hidden, "Hidden units")->capture_default_str()->check(CLI::PositiveNumber);
  fit->add_option("--epochs", fopts.epochs, "Full-batch epochs")->capture_default_str()->check(CLI::PositiveNumber);
  fit->add_option("--lr", fopts.lr, "Learning rate")->capture_default_str()->check(CLI::PositiveNumber);
  fit->add_option("--seed", fopts.seed, "Weight init seed")->capture_default_str();
  fit->add_option("--max-mse", max_mse, "Per-factor MSE threshold")->capture_default_str();

  auto* replay = app.add_subcommand("replay", "Re-run a recorded event trace");
  add_common(replay, common);
  std::string trace_path;
  std::optional<std::uint64_t> ticks;
  std::uint64_t snap_every = 10;
  std::string snap_out;
  replay->add_option("--trace", trace_path, "JSON-lines event trace")->required()->check(CLI::ExistingFile);
  replay->add_option("--ticks", ticks, "Final world tick (default: last event tick)");
  replay->add_option("--every", snap_every, "Snapshot every N ticks")->capture_default_str()->check(CLI::PositiveNumber);
  replay->add_option("--out", snap_out, "Write canonical state snapshots (JSON lines)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(2, "usage", e.what());
  }

  try {
    if (serve->parsed()) return cmd_serve(common, bind, hz, trace_out);
    if (simulate->parsed()) return cmd_simulate(common, policy, duration, sim_out, every);
    if (fit->parsed()) return cmd_fit(data_dir, model_out, fopts, max_mse);
    if (replay->parsed()) return cmd_replay(common, trace_path, ticks, snap_every, snap_out);
  } catch (const ConfigError& e) {
    return fail(3, "config", e.what());
  } catch (const ValidationError& e) {
    return fail(4, "validation", e.what());
  } catch (const ServiceError& e) {
    return fail(5, "service", e.what());
  } catch (const FitError& e) {
    return fail(6, "fit_diverged", e.what());
  } catch (const std::exception& e) {
    return fail(1, "internal", e.what());
  }
  return 0;
}
