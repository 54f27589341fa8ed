#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "modkit/gateway.hpp"
#include "modkit/indicators.hpp"
#include "modkit/types.hpp"

namespace modkit {

inline constexpr std::string_view kInformationalMessage =
    "This account has very little information on it- would you like to block them?";
inline constexpr std::string_view kVolumetricMessage =
    "You are receiving an unusual volume of tweets for your profile. Would you like to delete all incoming tweets?";

std::string longitudinal_message(std::size_t prior_abusive_count);
ActionKind action_for(IndicatorKind kind);

struct ScopePolicy {
  bool unknown_originator_in_scope = true;
};

// Target must be female; male->male is excluded. Unknown originators pass
// unless the policy says otherwise.
bool in_scope(const GenderLabel& originator, const GenderLabel& target, const ScopePolicy& policy = {});

// An accepted delete_incoming covers (issued_at - volume_window,
// issued_at + volume_window]: the current window is deleted and the next
// window's inbound events are suppressed on arrival.
struct DecisionSettings {
  Duration prompt_ttl = days(7);
  Duration volume_window = hours(1);
};

// Pending-prompt queue, decision log and action dispatch. Prompts dedup on
// (pair, kind) for block prompts and on (target, kind) for volumetric ones.
class DecisionEngine {
 public:
  DecisionEngine(DecisionSettings settings, PlatformGateway& gateway);

  // One prompt per triggered indicator not already pending. The report's
  // timestamp is the prompt's creation time. Blocked pairs and suppressed
  // windows raise nothing.
  std::vector<ModerationPrompt> prompts_for(const IndicatorReport& report);

  // Throws UnknownPrompt / AlreadyDecided.
  std::optional<ActionRecord> record_decision(const UserDecision& decision);

  // Newest first; expires prompts older than the TTL as of `now`.
  std::vector<ModerationPrompt> pending_prompts(const std::string& target_id, Timestamp now);
  void expire(Timestamp now);

  std::optional<ModerationPrompt> find_pending(const DirectedPairKey& pair, IndicatorKind kind) const;
  std::optional<ModerationPrompt> prompt(const std::string& prompt_id) const;

  bool is_blocked(const DirectedPairKey& pair) const;
  bool is_suppressed(const std::string& event_id) const;
  // True when an accepted delete_incoming covers `at` for this target.
  bool suppresses(const std::string& target_id, Timestamp at) const;
  void suppress(const std::vector<std::string>& event_ids);

  // Creation order.
  std::vector<ModerationPrompt> prompts() const;
  std::vector<UserDecision> decisions() const;
  std::vector<ActionRecord> actions() const;

  void restore(const std::vector<ModerationPrompt>& prompts, const std::vector<UserDecision>& decisions,
               const std::vector<ActionRecord>& actions);

 private:
  void expire_locked(Timestamp now);
  bool has_pending_locked(const DirectedPairKey& pair, IndicatorKind kind) const;
  ModerationPrompt* find_locked(const std::string& prompt_id);
  void note_applied_locked(const ActionRecord& action);
  bool suppresses_locked(const std::string& target_id, Timestamp at) const;

  DecisionSettings settings_;
  PlatformGateway& gateway_;
  mutable std::mutex mutex_;
  std::vector<ModerationPrompt> prompts_;
  std::map<std::string, std::size_t> prompt_index_;
  std::vector<UserDecision> decisions_;
  std::vector<ActionRecord> actions_;
  std::set<DirectedPairKey> blocked_;
  std::set<std::string> suppressed_;
  std::map<std::string, std::vector<std::pair<Timestamp, Timestamp>>> suppression_windows_;
  std::size_t next_prompt_ = 1;
  std::size_t next_action_ = 1;
};

}  // namespace modkit
