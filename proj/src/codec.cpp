#include "modkit/codec.hpp"

#include <array>
#include <utility>

#include <spdlog/spdlog.h>

#include "modkit/error.hpp"
#include "modkit/mentions.hpp"

namespace modkit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::RemoteUnavailable: return "RemoteUnavailable";
    case ErrorCode::CorruptSnapshot: return "CorruptSnapshot";
    case ErrorCode::UnknownProfile: return "UnknownProfile";
    case ErrorCode::UnknownPrompt: return "UnknownPrompt";
    case ErrorCode::AlreadyDecided: return "AlreadyDecided";
    case ErrorCode::SourceUnavailable: return "SourceUnavailable";
    case ErrorCode::RateLimited: return "RateLimited";
    case ErrorCode::CapabilityUnsupported: return "CapabilityUnsupported";
    case ErrorCode::NotImplemented: return "NotImplemented";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::AddressInUse: return "AddressInUse";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

template <typename E, std::size_t N>
std::string_view name_of(E v, const std::array<std::pair<E, std::string_view>, N>& table) {
  for (const auto& [e, s] : table) {
    if (e == v) return s;
  }
  return "?";
}

template <typename E, std::size_t N>
std::optional<E> value_of(std::string_view s, const std::array<std::pair<E, std::string_view>, N>& table) {
  for (const auto& [e, name] : table) {
    if (name == s) return e;
  }
  return std::nullopt;
}

constexpr std::array<std::pair<Gender, std::string_view>, 3> kGender{
    {{Gender::female, "female"}, {Gender::male, "male"}, {Gender::unknown, "unknown"}}};
constexpr std::array<std::pair<GenderSource, std::string_view>, 3> kGenderSource{
    {{GenderSource::remote_api, "remote_api"},
     {GenderSource::offline_table, "offline_table"},
     {GenderSource::unresolved, "unresolved"}}};
constexpr std::array<std::pair<ToxicityProvider, std::string_view>, 2> kToxProvider{
    {{ToxicityProvider::remote_api, "remote_api"}, {ToxicityProvider::offline_lexicon, "offline_lexicon"}}};
constexpr std::array<std::pair<IndicatorKind, std::string_view>, 3> kIndicator{
    {{IndicatorKind::longitudinal, "longitudinal"},
     {IndicatorKind::informational, "informational"},
     {IndicatorKind::volumetric, "volumetric"}}};
constexpr std::array<std::pair<ActionKind, std::string_view>, 2> kAction{
    {{ActionKind::block_account, "block_account"}, {ActionKind::delete_incoming, "delete_incoming"}}};
constexpr std::array<std::pair<PromptStatus, std::string_view>, 4> kStatus{
    {{PromptStatus::pending, "pending"},
     {PromptStatus::accepted, "accepted"},
     {PromptStatus::dismissed, "dismissed"},
     {PromptStatus::expired, "expired"}}};
constexpr std::array<std::pair<Decision, std::string_view>, 2> kDecision{
    {{Decision::accept, "accept"}, {Decision::dismiss, "dismiss"}}};
constexpr std::array<std::pair<GatewayResult, std::string_view>, 3> kGatewayResult{
    {{GatewayResult::applied, "applied"}, {GatewayResult::simulated, "simulated"}, {GatewayResult::failed, "failed"}}};

[[noreturn]] void malformed(const std::string& detail) { throw Error(ErrorCode::MalformedRecord, detail); }

const Json& require(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) malformed(std::string("missing field '") + key + "'");
  return *it;
}

std::string require_string(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_string()) malformed(std::string("field '") + key + "' is not a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) malformed(std::string("field '") + key + "' is not a string");
  return it->get<std::string>();
}

Timestamp require_time(const Json& j, const char* key) {
  const std::string raw = require_string(j, key);
  auto ts = parse_rfc3339(raw);
  if (!ts) malformed(std::string("field '") + key + "' is not an RFC-3339 timestamp: " + raw);
  return *ts;
}

std::int64_t optional_count(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return 0;
  if (!it->is_number_integer()) malformed(std::string("field '") + key + "' is not an integer");
  const auto v = it->get<std::int64_t>();
  if (v < 0) malformed(std::string("field '") + key + "' is negative");
  return v;
}

Json parse_object(std::string_view line) {
  Json j = Json::parse(line.begin(), line.end(), nullptr, false);
  if (j.is_discarded()) malformed("invalid JSON");
  if (!j.is_object()) malformed("record is not a JSON object");
  return j;
}

Json optional_to_json(const std::optional<std::string>& v) { return v ? Json(*v) : Json(nullptr); }

DirectedPairKey pair_from_json(const Json& j) {
  return {require_string(j, "originator_id"), require_string(j, "target_id")};
}

template <typename E, std::size_t N>
E require_enum(const Json& j, const char* key, const std::array<std::pair<E, std::string_view>, N>& table) {
  const std::string raw = require_string(j, key);
  auto v = value_of(raw, table);
  if (!v) malformed(std::string("field '") + key + "' has unknown value '" + raw + "'");
  return *v;
}

template <typename T, typename Parse>
ParsedBatch<T> read_lines(std::istream& in, std::string_view source_name, Parse parse) {
  ParsedBatch<T> batch;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      batch.records.push_back(parse(line));
    } catch (const Error& e) {
      ++batch.malformed;
      batch.malformed_lines.push_back(lineno);
      spdlog::warn("{}:{}: skipping record: {}", source_name, lineno, e.detail());
    }
  }
  return batch;
}

}  // namespace

std::size_t DirectedPairKeyHash::operator()(const DirectedPairKey& key) const noexcept {
  const std::size_t a = std::hash<std::string>{}(key.originator_id);
  const std::size_t b = std::hash<std::string>{}(key.target_id);
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

std::string_view to_string(Gender v) { return name_of(v, kGender); }
std::string_view to_string(GenderSource v) { return name_of(v, kGenderSource); }
std::string_view to_string(ToxicityProvider v) { return name_of(v, kToxProvider); }
std::string_view to_string(IndicatorKind v) { return name_of(v, kIndicator); }
std::string_view to_string(ActionKind v) { return name_of(v, kAction); }
std::string_view to_string(PromptStatus v) { return name_of(v, kStatus); }
std::string_view to_string(Decision v) { return name_of(v, kDecision); }
std::string_view to_string(GatewayResult v) { return name_of(v, kGatewayResult); }

std::optional<Gender> gender_from_string(std::string_view s) { return value_of(s, kGender); }
std::optional<GenderSource> gender_source_from_string(std::string_view s) { return value_of(s, kGenderSource); }
std::optional<ToxicityProvider> toxicity_provider_from_string(std::string_view s) { return value_of(s, kToxProvider); }
std::optional<IndicatorKind> indicator_kind_from_string(std::string_view s) { return value_of(s, kIndicator); }
std::optional<ActionKind> action_kind_from_string(std::string_view s) { return value_of(s, kAction); }
std::optional<PromptStatus> prompt_status_from_string(std::string_view s) { return value_of(s, kStatus); }
std::optional<Decision> decision_from_string(std::string_view s) { return value_of(s, kDecision); }
std::optional<GatewayResult> gateway_result_from_string(std::string_view s) { return value_of(s, kGatewayResult); }

std::string dump_line(const Json& j) { return j.dump(-1, ' ', false, Json::error_handler_t::replace); }

Json event_to_json(const InteractionEvent& e) {
  Json j;
  j["event_id"] = e.event_id;
  j["author_id"] = e.author_id;
  j["author_handle"] = e.author_handle;
  j["text"] = e.text;
  j["created_at"] = format_rfc3339(e.created_at);
  j["reply_to_event_id"] = optional_to_json(e.reply_to_event_id);
  j["lang"] = optional_to_json(e.lang);
  return j;
}

std::string encode_event(const InteractionEvent& event) { return dump_line(event_to_json(event)); }

InteractionEvent event_from_json(const Json& j) {
  if (!j.is_object()) malformed("record is not a JSON object");
  InteractionEvent e;
  e.event_id = require_string(j, "event_id");
  e.author_id = require_string(j, "author_id");
  e.author_handle = require_string(j, "author_handle");
  if (!e.author_handle.empty() && e.author_handle.front() == '@') e.author_handle.erase(0, 1);
  e.text = require_string(j, "text");
  e.created_at = require_time(j, "created_at");
  e.reply_to_event_id = optional_string(j, "reply_to_event_id");
  e.lang = optional_string(j, "lang");
  if (e.event_id.empty()) malformed("empty event_id");
  if (e.author_id.empty()) malformed("empty author_id");
  if (e.author_handle.empty()) malformed("empty author_handle");
  e.mentions = extract_mentions(e.text, e.author_handle);
  return e;
}

InteractionEvent parse_event(std::string_view line) { return event_from_json(parse_object(line)); }

Json profile_to_json(const UserProfile& p) {
  Json j;
  j["user_id"] = p.user_id;
  j["handle"] = p.handle;
  j["display_name"] = p.display_name;
  j["bio"] = p.bio;
  j["urls"] = p.urls;
  j["has_image"] = p.has_image;
  j["location"] = optional_to_json(p.location);
  j["created_at"] = format_rfc3339(p.created_at);
  j["followers_count"] = p.followers_count;
  j["tweet_count"] = p.tweet_count;
  return j;
}

std::string encode_profile(const UserProfile& profile) { return dump_line(profile_to_json(profile)); }

UserProfile profile_from_json(const Json& j) {
  if (!j.is_object()) malformed("record is not a JSON object");
  UserProfile p;
  p.user_id = require_string(j, "user_id");
  p.handle = require_string(j, "handle");
  if (!p.handle.empty() && p.handle.front() == '@') p.handle.erase(0, 1);
  p.display_name = require_string(j, "display_name");
  p.bio = optional_string(j, "bio").value_or("");
  if (auto it = j.find("urls"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) malformed("field 'urls' is not an array");
    for (const auto& u : *it) {
      if (!u.is_string()) malformed("field 'urls' holds a non-string");
      p.urls.push_back(u.get<std::string>());
    }
  }
  if (auto it = j.find("has_image"); it != j.end() && !it->is_null()) {
    if (!it->is_boolean()) malformed("field 'has_image' is not a boolean");
    p.has_image = it->get<bool>();
  }
  p.location = optional_string(j, "location");
  p.created_at = require_time(j, "created_at");
  p.followers_count = optional_count(j, "followers_count");
  p.tweet_count = optional_count(j, "tweet_count");
  if (p.user_id.empty()) malformed("empty user_id");
  if (p.handle.empty()) malformed("empty handle");
  return p;
}

UserProfile parse_profile(std::string_view line) { return profile_from_json(parse_object(line)); }

Json to_json(const GenderLabel& label) {
  Json j;
  j["value"] = to_string(label.value);
  j["confidence"] = label.confidence;
  j["source"] = to_string(label.source);
  return j;
}

Json to_json(const ToxicityScore& score) {
  Json j;
  j["value"] = score.value;
  j["provider"] = to_string(score.provider);
  return j;
}

ToxicityScore toxicity_from_json(const Json& j) {
  const Json& v = require(j, "value");
  if (!v.is_number()) malformed("toxicity value is not a number");
  return {v.get<double>(), require_enum(j, "provider", kToxProvider)};
}

Json to_json(const DirectedPairKey& key) {
  Json j;
  j["originator_id"] = key.originator_id;
  j["target_id"] = key.target_id;
  return j;
}

Json to_json(const ModerationPrompt& p) {
  Json j;
  j["prompt_id"] = p.prompt_id;
  j["pair"] = to_json(p.pair);
  j["event_id"] = p.event_id;
  j["kind"] = to_string(p.kind);
  j["message"] = p.message;
  j["proposed_action"] = to_string(p.proposed_action);
  j["created_at"] = format_rfc3339(p.created_at);
  j["status"] = to_string(p.status);
  return j;
}

ModerationPrompt prompt_from_json(const Json& j) {
  ModerationPrompt p;
  p.prompt_id = require_string(j, "prompt_id");
  p.pair = pair_from_json(require(j, "pair"));
  p.event_id = require_string(j, "event_id");
  p.kind = require_enum(j, "kind", kIndicator);
  p.message = require_string(j, "message");
  p.proposed_action = require_enum(j, "proposed_action", kAction);
  p.created_at = require_time(j, "created_at");
  p.status = require_enum(j, "status", kStatus);
  return p;
}

Json to_json(const UserDecision& d) {
  Json j;
  j["prompt_id"] = d.prompt_id;
  j["decision"] = to_string(d.decision);
  j["decided_at"] = format_rfc3339(d.decided_at);
  return j;
}

UserDecision decision_from_json(const Json& j) {
  return {require_string(j, "prompt_id"), require_enum(j, "decision", kDecision), require_time(j, "decided_at")};
}

namespace {

Json subject_to_json(const ActionRecord& a) {
  Json s;
  if (a.kind == ActionKind::block_account) {
    s["originator_id"] = a.subject.pair.originator_id;
    s["target_id"] = a.subject.pair.target_id;
  } else {
    s["target_id"] = a.subject.pair.target_id;
    s["originator_id"] = a.subject.pair.originator_id;
    s["window_start"] = a.subject.window_start ? Json(format_rfc3339(*a.subject.window_start)) : Json(nullptr);
    s["window_end"] = a.subject.window_end ? Json(format_rfc3339(*a.subject.window_end)) : Json(nullptr);
  }
  return s;
}

}  // namespace

Json to_json(const ActionRecord& a) {
  Json j;
  j["action_id"] = a.action_id;
  j["prompt_id"] = a.prompt_id;
  j["kind"] = to_string(a.kind);
  j["subject"] = subject_to_json(a);
  j["issued_at"] = format_rfc3339(a.issued_at);
  j["result"] = to_string(a.gateway_result);
  return j;
}

ActionRecord action_from_json(const Json& j) {
  ActionRecord a;
  a.action_id = require_string(j, "action_id");
  a.prompt_id = require_string(j, "prompt_id");
  a.kind = require_enum(j, "kind", kAction);
  const Json& s = require(j, "subject");
  a.subject.pair = pair_from_json(s);
  if (auto ws = optional_string(s, "window_start")) a.subject.window_start = parse_rfc3339(*ws);
  if (auto we = optional_string(s, "window_end")) a.subject.window_end = parse_rfc3339(*we);
  a.issued_at = require_time(j, "issued_at");
  a.gateway_result = require_enum(j, "result", kGatewayResult);
  return a;
}

std::string encode_action_log_line(const ActionRecord& a) {
  Json j;
  j["action_id"] = a.action_id;
  j["kind"] = to_string(a.kind);
  j["subject"] = subject_to_json(a);
  j["issued_at"] = format_rfc3339(a.issued_at);
  j["result"] = to_string(a.gateway_result);
  return dump_line(j);
}

ParsedBatch<InteractionEvent> read_events(std::istream& in, std::string_view source_name) {
  return read_lines<InteractionEvent>(in, source_name, [](const std::string& l) { return parse_event(l); });
}

ParsedBatch<UserProfile> read_profiles(std::istream& in, std::string_view source_name) {
  return read_lines<UserProfile>(in, source_name, [](const std::string& l) { return parse_profile(l); });
}

}  // namespace modkit
