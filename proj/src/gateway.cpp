#include "modkit/gateway.hpp"

#include <algorithm>

#include <spdlog/spdlog.h>

#include "modkit/codec.hpp"
#include "modkit/error.hpp"

namespace modkit {

namespace {

bool event_order(const InteractionEvent& a, const InteractionEvent& b) {
  if (a.created_at != b.created_at) return a.created_at < b.created_at;
  return a.event_id < b.event_id;
}

void require_capability(const GatewayCapability& cap, ActionKind kind) {
  if (kind == ActionKind::block_account && !cap.can_block) {
    throw Error(ErrorCode::CapabilityUnsupported, "adapter cannot block accounts");
  }
  if (kind == ActionKind::delete_incoming && !cap.can_suppress) {
    throw Error(ErrorCode::CapabilityUnsupported, "adapter cannot suppress incoming events");
  }
}

}  // namespace

ReplayGateway::ReplayGateway(GatewayCapability capability) : capability_(capability) {}

void ReplayGateway::load_profiles(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SourceUnavailable, "cannot read profiles " + path.string());
  auto batch = read_profiles(in, path.string());
  std::lock_guard lock(mutex_);
  profile_malformed_ += batch.malformed;
  for (auto& p : batch.records) profiles_[p.user_id] = std::move(p);
}

void ReplayGateway::add_profile(UserProfile profile) {
  std::lock_guard lock(mutex_);
  profiles_[profile.user_id] = std::move(profile);
}

void ReplayGateway::set_action_log(const std::filesystem::path& path) {
  std::lock_guard lock(mutex_);
  log_file_.emplace(path, std::ios::trunc);
  if (!*log_file_) throw Error(ErrorCode::SourceUnavailable, "cannot write action log " + path.string());
  for (const auto& l : log_) *log_file_ << l << '\n';
  log_file_->flush();
}

EventStream ReplayGateway::stream_events(const std::filesystem::path& source) {
  if (!capability_.can_read_stream) throw Error(ErrorCode::CapabilityUnsupported, "adapter cannot read streams");
  std::ifstream in(source);
  if (!in) throw Error(ErrorCode::SourceUnavailable, "cannot read events " + source.string());
  auto batch = read_events(in, source.string());
  std::stable_sort(batch.records.begin(), batch.records.end(), event_order);
  return {std::move(batch.records), batch.malformed};
}

UserProfile ReplayGateway::fetch_profile(const std::string& user_id) {
  std::lock_guard lock(mutex_);
  ++profile_lookups_;
  auto it = profiles_.find(user_id);
  if (it == profiles_.end()) throw Error(ErrorCode::UnknownProfile, "no archived profile for " + user_id);
  return it->second;
}

std::vector<UserProfile> ReplayGateway::known_profiles() const {
  std::lock_guard lock(mutex_);
  std::vector<UserProfile> out;
  out.reserve(profiles_.size());
  for (const auto& [id, p] : profiles_) out.push_back(p);
  return out;
}

GatewayResult ReplayGateway::execute(const ActionRecord& action) {
  std::lock_guard lock(mutex_);
  if (auto it = executed_.find(action.action_id); it != executed_.end()) return it->second;
  require_capability(capability_, action.kind);
  ActionRecord logged = action;
  logged.gateway_result = GatewayResult::simulated;
  const auto line = encode_action_log_line(logged);
  log_.push_back(line);
  if (log_file_) {
    *log_file_ << line << '\n';
    log_file_->flush();
  }
  executed_.emplace(action.action_id, GatewayResult::simulated);
  return GatewayResult::simulated;
}

std::vector<std::string> ReplayGateway::action_log() const {
  std::lock_guard lock(mutex_);
  return log_;
}

LiveGateway::LiveGateway(std::string bearer_token, std::string acting_user_id, GatewayCapability capability)
    : bearer_token_(std::move(bearer_token)),
      acting_user_id_(std::move(acting_user_id)),
      capability_(capability),
      clock_([] { return std::chrono::floor<Duration>(std::chrono::system_clock::now()); }) {}

void LiveGateway::consume_quota() {
  if (bearer_token_.empty()) throw Error(ErrorCode::SourceUnavailable, "live gateway requires a bearer token");
  if (capability_.rate_limit == 0) return;
  const auto now = clock_();
  constexpr Duration interval = minutes(15);
  if (!window_start_ || now >= *window_start_ + interval) {
    window_start_ = now;
    used_ = 0;
  }
  if (used_ >= capability_.rate_limit) {
    Error err(ErrorCode::RateLimited, "rate limit of " + std::to_string(capability_.rate_limit) +
                                          " requests per 15 minutes reached");
    err.retry_after = *window_start_ + interval - now;
    throw err;
  }
  ++used_;
}

EventStream LiveGateway::stream_events(const std::filesystem::path&) {
  consume_quota();
  throw Error(ErrorCode::SourceUnavailable, "NotImplemented: live streaming is not available");
}

UserProfile LiveGateway::fetch_profile(const std::string& user_id) {
  if (user_id.empty()) throw Error(ErrorCode::InvalidArgument, "empty user id");
  consume_quota();
  formatted_.push_back({"GET", "/2/users/" + user_id + "?user.fields=description,entities,location,profile_image_url,created_at,public_metrics", ""});
  throw Error(ErrorCode::SourceUnavailable, "NotImplemented: live profile lookup is not available");
}

WireRequest LiveGateway::format_request(const ActionRecord& action) const {
  Json body;
  if (action.kind == ActionKind::block_account) {
    body["target_user_id"] = action.subject.pair.originator_id;
    return {"POST", "/2/users/" + acting_user_id_ + "/blocking", dump_line(body)};
  }
  body["target_user_id"] = action.subject.pair.target_id;
  body["start_time"] = action.subject.window_start ? format_rfc3339(*action.subject.window_start) : "";
  body["end_time"] = action.subject.window_end ? format_rfc3339(*action.subject.window_end) : "";
  return {"POST", "/2/users/" + acting_user_id_ + "/muted_windows", dump_line(body)};
}

GatewayResult LiveGateway::execute(const ActionRecord& action) {
  require_capability(capability_, action.kind);
  if (action.action_id.empty()) throw Error(ErrorCode::InvalidArgument, "action without id");
  consume_quota();
  formatted_.push_back(format_request(action));
  spdlog::warn("live gateway: {} for {} not executed (NotImplemented)", to_string(action.kind), action.action_id);
  return GatewayResult::failed;
}

}  // namespace modkit
