#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "modkit/types.hpp"

namespace modkit {

using Json = nlohmann::ordered_json;

// Event and profile records follow the JSONL schemas field-for-field, in
// schema order. Stored mentions are never written or read; parse_event
// recomputes them from the text.
std::string encode_event(const InteractionEvent& event);
InteractionEvent parse_event(std::string_view line);
InteractionEvent event_from_json(const Json& j);
Json event_to_json(const InteractionEvent& event);

std::string encode_profile(const UserProfile& profile);
UserProfile parse_profile(std::string_view line);
UserProfile profile_from_json(const Json& j);
Json profile_to_json(const UserProfile& profile);

Json to_json(const GenderLabel& label);
Json to_json(const ToxicityScore& score);
ToxicityScore toxicity_from_json(const Json& j);
Json to_json(const DirectedPairKey& key);

Json to_json(const ModerationPrompt& prompt);
ModerationPrompt prompt_from_json(const Json& j);
Json to_json(const UserDecision& decision);
UserDecision decision_from_json(const Json& j);

// Full record including prompt_id, for snapshots.
Json to_json(const ActionRecord& action);
ActionRecord action_from_json(const Json& j);
// Action-log line: {"action_id","kind","subject","issued_at","result"}.
std::string encode_action_log_line(const ActionRecord& action);

std::string dump_line(const Json& j);

template <typename T>
struct ParsedBatch {
  std::vector<T> records;
  std::size_t malformed = 0;
  // 1-based line numbers of skipped records.
  std::vector<std::size_t> malformed_lines;
};

// Blank lines are ignored; malformed lines are skipped, counted and logged.
ParsedBatch<InteractionEvent> read_events(std::istream& in, std::string_view source_name = "events");
ParsedBatch<UserProfile> read_profiles(std::istream& in, std::string_view source_name = "profiles");

}  // namespace modkit
