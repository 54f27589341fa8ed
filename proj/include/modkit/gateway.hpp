#pragma once

#include <filesystem>
#include <functional>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "modkit/types.hpp"

namespace modkit {

struct GatewayCapability {
  bool can_read_stream = true;
  bool can_block = true;
  bool can_suppress = true;
  // Requests per 15-minute interval; 0 means unlimited.
  std::size_t rate_limit = 0;
};

struct EventStream {
  std::vector<InteractionEvent> events;
  std::size_t malformed = 0;
};

// Boundary to the platform: read events and profiles, execute actions.
class PlatformGateway {
 public:
  virtual ~PlatformGateway() = default;

  virtual GatewayCapability capabilities() const = 0;
  // Events in (created_at, event_id) order.
  virtual EventStream stream_events(const std::filesystem::path& source) = 0;
  virtual UserProfile fetch_profile(const std::string& user_id) = 0;
  // Profiles the adapter can serve without network access.
  virtual std::vector<UserProfile> known_profiles() const = 0;
  virtual GatewayResult execute(const ActionRecord& action) = 0;
};

// Offline adapter: serves archived JSONL files and records actions to an
// append-only log. Performs no network activity.
class ReplayGateway final : public PlatformGateway {
 public:
  explicit ReplayGateway(GatewayCapability capability = {});

  // Loads the profile archive; throws SourceUnavailable if unreadable.
  void load_profiles(const std::filesystem::path& path);
  void add_profile(UserProfile profile);
  // Mirrors every executed action to this file (truncated on open).
  void set_action_log(const std::filesystem::path& path);

  GatewayCapability capabilities() const override { return capability_; }
  EventStream stream_events(const std::filesystem::path& source) override;
  UserProfile fetch_profile(const std::string& user_id) override;
  std::vector<UserProfile> known_profiles() const override;
  GatewayResult execute(const ActionRecord& action) override;

  std::vector<std::string> action_log() const;
  std::size_t profile_malformed() const noexcept { return profile_malformed_; }
  std::size_t profile_lookups() const noexcept { return profile_lookups_; }

 private:
  GatewayCapability capability_;
  mutable std::mutex mutex_;
  std::map<std::string, UserProfile> profiles_;
  std::size_t profile_malformed_ = 0;
  std::size_t profile_lookups_ = 0;
  std::unordered_map<std::string, GatewayResult> executed_;
  std::vector<std::string> log_;
  std::optional<std::ofstream> log_file_;
};

// Wire request the live adapter would send.
struct WireRequest {
  std::string method;
  std::string path;
  std::string body;
};

// Live platform contract. Requests are validated, rate-limited and formatted,
// but write access is not implemented: execute() returns failed and reads
// throw SourceUnavailable with a NotImplemented detail.
class LiveGateway final : public PlatformGateway {
 public:
  LiveGateway(std::string bearer_token, std::string acting_user_id, GatewayCapability capability = {true, true, false, 900});

  GatewayCapability capabilities() const override { return capability_; }
  EventStream stream_events(const std::filesystem::path& source) override;
  UserProfile fetch_profile(const std::string& user_id) override;
  std::vector<UserProfile> known_profiles() const override { return {}; }
  GatewayResult execute(const ActionRecord& action) override;

  WireRequest format_request(const ActionRecord& action) const;
  const std::vector<WireRequest>& formatted_requests() const noexcept { return formatted_; }
  // Virtual time for the 15-minute rate window; defaults to the system clock.
  void set_clock(std::function<Timestamp()> clock) { clock_ = std::move(clock); }

 private:
  void consume_quota();

  std::string bearer_token_;
  std::string acting_user_id_;
  GatewayCapability capability_;
  std::function<Timestamp()> clock_;
  std::optional<Timestamp> window_start_;
  std::size_t used_ = 0;
  std::vector<WireRequest> formatted_;
};

}  // namespace modkit
