#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modkit/time.hpp"

namespace modkit {

// One public message. `mentions` is always derived from `text`.
struct InteractionEvent {
  std::string event_id;
  std::string author_id;
  std::string author_handle;
  std::string text;
  Timestamp created_at{};
  std::vector<std::string> mentions;
  std::optional<std::string> reply_to_event_id;
  std::optional<std::string> lang;

  bool operator==(const InteractionEvent&) const = default;
};

struct UserProfile {
  std::string user_id;
  std::string handle;
  std::string display_name;
  std::string bio;
  std::vector<std::string> urls;
  bool has_image = false;
  std::optional<std::string> location;
  Timestamp created_at{};
  std::int64_t followers_count = 0;
  std::int64_t tweet_count = 0;

  bool operator==(const UserProfile&) const = default;
};

enum class Gender { female, male, unknown };
enum class GenderSource { remote_api, offline_table, unresolved };

struct GenderLabel {
  Gender value = Gender::unknown;
  double confidence = 0.0;
  GenderSource source = GenderSource::unresolved;

  bool operator==(const GenderLabel&) const = default;
};

// Ordered: (a, b) and (b, a) are different pairs.
struct DirectedPairKey {
  std::string originator_id;
  std::string target_id;

  auto operator<=>(const DirectedPairKey&) const = default;
  bool operator==(const DirectedPairKey&) const = default;

  DirectedPairKey reversed() const { return {target_id, originator_id}; }
};

struct DirectedPairKeyHash {
  std::size_t operator()(const DirectedPairKey& key) const noexcept;
};

enum class ToxicityProvider { remote_api, offline_lexicon };

struct ToxicityScore {
  double value = 0.0;
  ToxicityProvider provider = ToxicityProvider::offline_lexicon;

  bool operator==(const ToxicityScore&) const = default;
};

enum class IndicatorKind { longitudinal, informational, volumetric };
enum class ActionKind { block_account, delete_incoming };
enum class PromptStatus { pending, accepted, dismissed, expired };
enum class Decision { accept, dismiss };
enum class GatewayResult { applied, simulated, failed };

struct ModerationPrompt {
  std::string prompt_id;
  DirectedPairKey pair;
  std::string event_id;
  IndicatorKind kind = IndicatorKind::longitudinal;
  std::string message;
  ActionKind proposed_action = ActionKind::block_account;
  Timestamp created_at{};
  PromptStatus status = PromptStatus::pending;

  bool operator==(const ModerationPrompt&) const = default;
};

struct UserDecision {
  std::string prompt_id;
  Decision decision = Decision::dismiss;
  Timestamp decided_at{};

  bool operator==(const UserDecision&) const = default;
};

// block_account acts on `pair`; delete_incoming acts on the target's inbound
// events inside (window_start, window_end].
struct ActionSubject {
  DirectedPairKey pair;
  std::optional<Timestamp> window_start;
  std::optional<Timestamp> window_end;

  bool operator==(const ActionSubject&) const = default;
};

struct ActionRecord {
  std::string action_id;
  std::string prompt_id;
  ActionKind kind = ActionKind::block_account;
  ActionSubject subject;
  Timestamp issued_at{};
  GatewayResult gateway_result = GatewayResult::simulated;

  bool operator==(const ActionRecord&) const = default;
};

std::string_view to_string(Gender v);
std::string_view to_string(GenderSource v);
std::string_view to_string(ToxicityProvider v);
std::string_view to_string(IndicatorKind v);
std::string_view to_string(ActionKind v);
std::string_view to_string(PromptStatus v);
std::string_view to_string(Decision v);
std::string_view to_string(GatewayResult v);

std::optional<Gender> gender_from_string(std::string_view s);
std::optional<GenderSource> gender_source_from_string(std::string_view s);
std::optional<ToxicityProvider> toxicity_provider_from_string(std::string_view s);
std::optional<IndicatorKind> indicator_kind_from_string(std::string_view s);
std::optional<ActionKind> action_kind_from_string(std::string_view s);
std::optional<PromptStatus> prompt_status_from_string(std::string_view s);
std::optional<Decision> decision_from_string(std::string_view s);
std::optional<GatewayResult> gateway_result_from_string(std::string_view s);

}  // namespace modkit
