#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "modkit/clients.hpp"
#include "modkit/config.hpp"
#include "modkit/decisions.hpp"
#include "modkit/gateway.hpp"
#include "modkit/indicators.hpp"
#include "modkit/store.hpp"

namespace modkit {

struct TargetEvaluation {
  DirectedPairKey pair;
  // 1-based position of the target among the event's mentions.
  std::size_t position = 0;
  GenderLabel originator_gender;
  GenderLabel target_gender;
  bool in_scope = false;
  std::optional<IndicatorReport> report;
  std::vector<ModerationPrompt> prompts;
};

struct IngestResult {
  bool duplicate = false;
  bool clock_skew = false;
  std::vector<TargetEvaluation> evaluations;
};

enum class TargetSelection {
  // Only monitored targets are evaluated and prompted.
  monitored,
  // Every mentioned target is evaluated; no prompts are raised.
  all_targets,
};

// Composition of store, clients, indicator engine, decision engine and
// gateway. All writes (ingest, decide) are serialized; queries may run
// concurrently.
class ModerationService {
 public:
  ModerationService(AppConfig config, PlatformGateway& gateway, GenderClient& gender, ToxicityClient& toxicity,
                    TargetSelection selection = TargetSelection::monitored);

  IngestResult ingest(const InteractionEvent& event);

  // decided_at is the virtual clock. Throws UnknownPrompt / AlreadyDecided.
  std::optional<ActionRecord> decide(const std::string& prompt_id, Decision decision);

  std::vector<ModerationPrompt> pending_prompts(const std::string& target_id);
  // Gender label for a user id, from its profile's display name.
  GenderLabel gender_of(const std::string& user_id);

  // Latest ingested created_at; epoch before any event.
  Timestamp now() const;

  const InteractionStore& store() const noexcept { return store_; }
  DecisionEngine& decisions() noexcept { return engine_; }
  const DecisionEngine& decisions() const noexcept { return engine_; }
  const AppConfig& config() const noexcept { return config_; }
  bool is_monitored(const std::string& user_id) const;

  StoreSnapshot snapshot() const;
  void restore(const StoreSnapshot& snapshot);

 private:
  void apply_suppression(const ActionRecord& action);

  AppConfig config_;
  PlatformGateway& gateway_;
  GenderClient& gender_;
  ToxicityClient& toxicity_;
  TargetSelection selection_;
  InteractionStore store_;
  DecisionEngine engine_;
  std::set<std::string> monitored_;
  std::mutex writer_;
  std::mutex gender_memo_mutex_;
  std::map<std::string, GenderLabel> gender_memo_;
};

struct PipelineSummary {
  std::size_t read = 0;
  std::size_t malformed = 0;
  std::size_t out_of_scope = 0;
  std::size_t emitted = 0;
  std::size_t mentions_dropped = 0;
  std::size_t users_labelled = 0;
  std::size_t users_total = 0;

  double gender_coverage() const {
    return users_total == 0 ? 1.0 : static_cast<double>(users_labelled) / static_cast<double>(users_total);
  }
  bool operator==(const PipelineSummary&) const = default;
};

Json to_json(const PipelineSummary& summary);

// Batch enrichment: one JSONL record per in-scope (event, target) pair.
// Throws SourceUnavailable when inputs cannot be read.
PipelineSummary run_pipeline(const std::filesystem::path& events_path, const std::filesystem::path& profiles_path,
                             const std::filesystem::path& out_path, const AppConfig& config,
                             const std::optional<std::filesystem::path>& snapshot_out = std::nullopt);

struct DecisionScriptEntry {
  DirectedPairKey pair;
  IndicatorKind kind = IndicatorKind::longitudinal;
  Decision decision = Decision::accept;
  std::string after_event_id;
};

std::vector<DecisionScriptEntry> read_decision_script(const std::filesystem::path& path);

struct ReplayResult {
  std::vector<std::string> action_log;
  // Every prompt in creation order with its final status.
  std::vector<std::string> transcript;
  std::vector<ModerationPrompt> prompts;
  std::size_t events = 0;
  std::size_t duplicates = 0;
  std::size_t malformed = 0;
  std::size_t decisions_applied = 0;
  std::size_t decisions_unmatched = 0;
};

struct ReplayOptions {
  std::optional<std::filesystem::path> decisions_path;
  std::optional<std::filesystem::path> actions_out;
  std::optional<std::filesystem::path> transcript_out;
  std::optional<std::filesystem::path> snapshot_out;
  GatewayCapability capability{};
};

// Deterministic end-to-end run under the virtual clock.
ReplayResult replay(const std::filesystem::path& events_path, const std::filesystem::path& profiles_path,
                    const AppConfig& config, const ReplayOptions& options = {});

}  // namespace modkit
