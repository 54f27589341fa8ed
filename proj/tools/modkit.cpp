#include <atomic>
#include <chrono>
#include <csignal>
#include <filesystem>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "modkit/config.hpp"
#include "modkit/error.hpp"
#include "modkit/server.hpp"
#include "modkit/service.hpp"

namespace fs = std::filesystem;
using namespace modkit;

namespace {

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

AppConfig config_or_defaults(const std::string& path) {
  if (path.empty()) {
    AppConfig cfg = config_from_json(Json::object());
    return cfg;
  }
  return load_config(path);
}

fs::path snapshot_path(const fs::path& store_dir) { return store_dir / "snapshot.modk"; }

int cmd_pipeline(const std::string& config_path, const std::string& events, const std::string& profiles,
                 const std::string& out, const std::string& store) {
  const AppConfig cfg = config_or_defaults(config_path);
  std::optional<fs::path> snap;
  if (!store.empty()) {
    fs::create_directories(store);
    snap = snapshot_path(store);
  }
  const auto started = std::chrono::steady_clock::now();
  const PipelineSummary summary = run_pipeline(events, profiles, out, cfg, snap);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
  Json j = to_json(summary);
  j["elapsed_ms"] = ms.count();
  std::cout << j.dump(2) << '\n';
  if (summary.emitted == 0) {
    std::cerr << "modkit: no in-scope (event, target) pairs were emitted\n";
    return 2;
  }
  return 0;
}

int cmd_replay(const std::string& config_path, const std::string& events, const std::string& profiles,
               const std::string& decisions, const std::string& actions_out, const std::string& transcript_out,
               const std::string& store, const std::vector<std::string>& targets) {
  AppConfig cfg = config_or_defaults(config_path);
  for (const auto& t : targets) cfg.monitored_targets.push_back(t);
  cfg.require_monitored_targets();
  ReplayOptions options;
  if (!decisions.empty()) options.decisions_path = decisions;
  if (!actions_out.empty()) options.actions_out = actions_out;
  if (!transcript_out.empty()) options.transcript_out = transcript_out;
  if (!store.empty()) {
    fs::create_directories(store);
    options.snapshot_out = snapshot_path(store);
  }
  const ReplayResult result = replay(events, profiles, cfg, options);
  Json j;
  j["events"] = result.events;
  j["duplicates"] = result.duplicates;
  j["malformed"] = result.malformed;
  j["prompts"] = result.prompts.size();
  j["actions"] = result.action_log.size();
  j["decisions_applied"] = result.decisions_applied;
  j["decisions_unmatched"] = result.decisions_unmatched;
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_serve(const std::string& config_path, const std::string& profiles, const std::string& events,
              const std::string& actions_out, const std::string& store, const std::string& listen,
              const std::vector<std::string>& targets) {
  AppConfig cfg = config_or_defaults(config_path);
  for (const auto& t : targets) cfg.monitored_targets.push_back(t);
  if (!store.empty()) cfg.store_dir = store;
  if (!listen.empty()) cfg.listen_address = listen;
  cfg.validate();
  cfg.require_monitored_targets();

  ReplayGateway gateway;
  if (!profiles.empty()) gateway.load_profiles(profiles);
  if (!actions_out.empty()) gateway.set_action_log(actions_out);
  GenderClient gender(cfg.gender_client, cfg.gender_confidence_min);
  ToxicityClient toxicity(cfg.toxicity_client);
  ModerationService service(cfg, gateway, gender, toxicity);

  fs::create_directories(cfg.store_dir);
  const fs::path snap = snapshot_path(cfg.store_dir);
  if (fs::exists(snap)) {
    service.restore(load_snapshot(snap));
    spdlog::info("restored {} events from {}", service.store().event_count(), snap.string());
  }
  if (!events.empty()) {
    for (const auto& e : gateway.stream_events(events).events) service.ingest(e);
  }

  ModerationServer server(service);
  const int port = server.bind(cfg.listen_host(), cfg.listen_port());
  spdlog::info("modkit listening on {}:{}", cfg.listen_host(), port);

  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::thread watcher([&] {
    while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    server.stop();
  });
  server.run();
  g_stop = true;
  watcher.join();
  save_snapshot(service.snapshot(), snap);
  spdlog::info("snapshot written to {}", snap.string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modkit: user-side moderation for multidimensional abuse"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);

  std::string events, profiles, out, store, decisions, actions_out, transcript_out, listen;
  std::vector<std::string> targets;

  auto* pipeline = app.add_subcommand("pipeline", "Enrich an event archive with gender labels and indicators");
  pipeline->add_option("--events", events, "events JSONL")->required();
  pipeline->add_option("--profiles", profiles, "profiles JSONL")->required();
  pipeline->add_option("--out", out, "enriched JSONL output")->required();
  pipeline->add_option("--store", store, "directory for the store snapshot");
  pipeline->add_option("--config", config_path, "JSON config file");

  auto* rep = app.add_subcommand("replay", "Deterministic end-to-end run over archived events");
  rep->add_option("--events", events, "events JSONL")->required();
  rep->add_option("--profiles", profiles, "profiles JSONL")->required();
  rep->add_option("--decisions", decisions, "decision script JSONL");
  rep->add_option("--actions-out", actions_out, "action log JSONL output");
  rep->add_option("--transcript-out", transcript_out, "prompt transcript JSONL output");
  rep->add_option("--store", store, "directory for the store snapshot");
  rep->add_option("--target", targets, "monitored user id (repeatable)");
  rep->add_option("--config", config_path, "JSON config file");

  auto* serve = app.add_subcommand("serve", "Run the HTTP moderation service");
  serve->add_option("--profiles", profiles, "profiles JSONL");
  serve->add_option("--events", events, "events JSONL to ingest at startup");
  serve->add_option("--actions-out", actions_out, "action log JSONL output");
  serve->add_option("--store", store, "store directory (overrides config)");
  serve->add_option("--listen", listen, "host:port (overrides config)");
  serve->add_option("--target", targets, "monitored user id (repeatable)");
  serve->add_option("--config", config_path, "JSON config file");

  bool print_defaults = false;
  auto* config = app.add_subcommand("config", "Inspect configuration");
  config->add_flag("--print-defaults", print_defaults, "print the default config as JSON");
  config->add_option("--config", config_path, "validate this config file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*pipeline) return cmd_pipeline(config_path, events, profiles, out, store);
    if (*rep) return cmd_replay(config_path, events, profiles, decisions, actions_out, transcript_out, store, targets);
    if (*serve) return cmd_serve(config_path, profiles, events, actions_out, store, listen, targets);
    if (*config) {
      if (print_defaults) {
        std::cout << config_to_json(AppConfig{}).dump(2) << '\n';
        return 0;
      }
      if (!config_path.empty()) {
        std::cout << config_to_json(load_config(config_path)).dump(2) << '\n';
        return 0;
      }
      std::cerr << "modkit config: pass --print-defaults or --config <path>\n";
      return 1;
    }
  } catch (const Error& e) {
    std::cerr << "modkit: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
