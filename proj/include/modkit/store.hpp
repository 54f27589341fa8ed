#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "modkit/time.hpp"
#include "modkit/types.hpp"

namespace modkit {

inline constexpr std::uint32_t kSchemaVersion = 1;

struct StoreSettings {
  double abuse_toxicity_min = 0.70;
  Duration skew_tolerance = minutes(5);
};

struct PairEntry {
  std::string event_id;
  Timestamp created_at{};
  double toxicity = 0.0;

  bool operator==(const PairEntry&) const = default;
};

struct PairHistory {
  DirectedPairKey key;
  // Ordered by (created_at, event_id).
  std::vector<PairEntry> events;
  std::size_t abusive_count = 0;

  bool operator==(const PairHistory&) const = default;
};

struct StoredEvent {
  InteractionEvent event;
  ToxicityScore toxicity;
  // Resolved ids of event.mentions, same order.
  std::vector<std::string> target_ids;

  bool operator==(const StoredEvent&) const = default;
};

struct AppendOutcome {
  std::vector<DirectedPairKey> keys;
  bool duplicate = false;
  bool clock_skew = false;
};

struct StoreSnapshot {
  std::uint32_t schema_version = kSchemaVersion;
  std::vector<StoredEvent> events;
  std::vector<UserProfile> profiles;
  std::vector<ModerationPrompt> prompts;
  std::vector<UserDecision> decisions;
  std::vector<ActionRecord> actions;

  bool operator==(const StoreSnapshot&) const = default;
};

// Binary header (u32 header length, "MODK", u32 schema version, u64 FNV-1a
// checksum of the body, u64 body length) followed by JSONL sections.
void save_snapshot(const StoreSnapshot& snapshot, const std::filesystem::path& path);
StoreSnapshot load_snapshot(const std::filesystem::path& path);
std::string encode_snapshot(const StoreSnapshot& snapshot);
StoreSnapshot decode_snapshot(std::string_view bytes);

std::uint64_t fnv1a64(std::string_view bytes);

// Append-only event log indexed by directed pair and by target.
// Single writer, many readers: queries take a shared lock and never see a
// partially applied append.
class InteractionStore {
 public:
  explicit InteractionStore(StoreSettings settings = {});

  void upsert_profile(const UserProfile& profile);
  std::optional<UserProfile> profile(const std::string& user_id) const;
  std::vector<UserProfile> profiles() const;
  // Case-insensitive; unknown handles map to "@<lowercase handle>".
  std::string resolve_handle(std::string_view handle) const;

  AppendOutcome append_event(const InteractionEvent& event, const ToxicityScore& toxicity);

  // Events of `key` in (at - lookback, at].
  PairHistory pair_history(const DirectedPairKey& key, Duration lookback, Timestamp at) const;
  // Same, with `at` = now().
  PairHistory pair_history(const DirectedPairKey& key, Duration lookback) const;

  std::size_t pair_count(const DirectedPairKey& key, Duration lookback, Timestamp at) const;
  // 100 * n(o->t) / (n(o->t) + n(t->o)) over lookback; absent when no events.
  std::optional<double> directionality_pct(const DirectedPairKey& key, Duration lookback, Timestamp at) const;

  // Events mentioning `target_id` with created_at in (at - window, at].
  std::size_t inbound_count(const std::string& target_id, Duration window, Timestamp at) const;
  // Mean inbound_count over the floor(trailing / window) complete windows
  // immediately before (at - window, at].
  double inbound_baseline(const std::string& target_id, Duration window, Duration trailing, Timestamp at) const;
  // Event ids mentioning target in (from, to].
  std::vector<std::string> inbound_event_ids(const std::string& target_id, Timestamp from, Timestamp to) const;

  bool contains(const std::string& event_id) const;
  std::optional<StoredEvent> find_event(const std::string& event_id) const;
  std::size_t event_count() const;
  std::size_t skew_count() const;
  // Latest created_at stored; the virtual clock in replay.
  std::optional<Timestamp> now() const;

  const StoreSettings& settings() const noexcept { return settings_; }

  // Events in (created_at, event_id) order, plus all profiles.
  StoreSnapshot snapshot() const;
  // Rebuilds indexes from a snapshot's events and profiles.
  void restore(const StoreSnapshot& snapshot);

 private:
  struct IndexEntry {
    Timestamp created_at;
    std::string event_id;
    double toxicity;
    auto operator<=>(const IndexEntry& o) const {
      if (auto c = created_at <=> o.created_at; c != 0) return c;
      return event_id <=> o.event_id;
    }
    bool operator==(const IndexEntry& o) const { return created_at == o.created_at && event_id == o.event_id; }
  };
  using Index = std::vector<IndexEntry>;

  std::string resolve_locked(std::string_view handle) const;
  void append_locked(const StoredEvent& stored);
  static std::size_t count_in(const Index& index, Timestamp from_exclusive, Timestamp to_inclusive);

  StoreSettings settings_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, StoredEvent> events_;
  std::unordered_map<std::string, UserProfile> profiles_;
  std::unordered_map<std::string, std::string> handle_index_;
  std::unordered_map<DirectedPairKey, Index, DirectedPairKeyHash> pair_index_;
  std::unordered_map<std::string, Index> inbound_index_;
  std::optional<Timestamp> latest_;
  std::size_t skew_count_ = 0;
};

}  // namespace modkit
