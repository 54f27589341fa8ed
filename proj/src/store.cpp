#include "modkit/store.hpp"

#include <algorithm>
#include <mutex>

#include <spdlog/spdlog.h>

#include "modkit/mentions.hpp"

namespace modkit {

InteractionStore::InteractionStore(StoreSettings settings) : settings_(settings) {}

void InteractionStore::upsert_profile(const UserProfile& profile) {
  std::unique_lock lock(mutex_);
  if (auto it = profiles_.find(profile.user_id); it != profiles_.end()) {
    handle_index_.erase(lower_ascii(it->second.handle));
  }
  handle_index_[lower_ascii(profile.handle)] = profile.user_id;
  profiles_[profile.user_id] = profile;
}

std::optional<UserProfile> InteractionStore::profile(const std::string& user_id) const {
  std::shared_lock lock(mutex_);
  auto it = profiles_.find(user_id);
  if (it == profiles_.end()) return std::nullopt;
  return it->second;
}

std::vector<UserProfile> InteractionStore::profiles() const {
  std::shared_lock lock(mutex_);
  std::vector<UserProfile> out;
  out.reserve(profiles_.size());
  for (const auto& [id, p] : profiles_) out.push_back(p);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.user_id < b.user_id; });
  return out;
}

std::string InteractionStore::resolve_locked(std::string_view handle) const {
  std::string key = lower_ascii(handle);
  if (auto it = handle_index_.find(key); it != handle_index_.end()) return it->second;
  return "@" + key;
}

std::string InteractionStore::resolve_handle(std::string_view handle) const {
  std::shared_lock lock(mutex_);
  return resolve_locked(handle);
}

void InteractionStore::append_locked(const StoredEvent& stored) {
  const auto& e = stored.event;
  const IndexEntry entry{e.created_at, e.event_id, stored.toxicity.value};
  auto insert_sorted = [&](Index& index) { index.insert(std::upper_bound(index.begin(), index.end(), entry), entry); };
  for (const auto& target : stored.target_ids) {
    insert_sorted(pair_index_[DirectedPairKey{e.author_id, target}]);
    insert_sorted(inbound_index_[target]);
  }
  if (!latest_ || e.created_at > *latest_) latest_ = e.created_at;
  events_.emplace(e.event_id, stored);
}

AppendOutcome InteractionStore::append_event(const InteractionEvent& event, const ToxicityScore& toxicity) {
  std::unique_lock lock(mutex_);
  AppendOutcome outcome;
  if (events_.count(event.event_id) != 0) {
    outcome.duplicate = true;
    return outcome;
  }
  StoredEvent stored{event, toxicity, {}};
  for (const auto& handle : event.mentions) {
    std::string target = resolve_locked(handle);
    if (target == event.author_id) continue;
    if (std::find(stored.target_ids.begin(), stored.target_ids.end(), target) != stored.target_ids.end()) continue;
    stored.target_ids.push_back(std::move(target));
  }
  if (latest_ && event.created_at < *latest_ - settings_.skew_tolerance) {
    outcome.clock_skew = true;
    ++skew_count_;
    spdlog::debug("event {} is {}s behind the latest stored event", event.event_id,
                  (*latest_ - event.created_at).count());
  }
  for (const auto& target : stored.target_ids) outcome.keys.push_back({event.author_id, target});
  append_locked(stored);
  return outcome;
}

std::size_t InteractionStore::count_in(const Index& index, Timestamp from_exclusive, Timestamp to_inclusive) {
  if (to_inclusive <= from_exclusive) return 0;
  auto by_time = [](const IndexEntry& e, Timestamp t) { return e.created_at <= t; };
  const auto lo = std::partition_point(index.begin(), index.end(), [&](const IndexEntry& e) { return by_time(e, from_exclusive); });
  const auto hi = std::partition_point(lo, index.end(), [&](const IndexEntry& e) { return by_time(e, to_inclusive); });
  return static_cast<std::size_t>(hi - lo);
}

PairHistory InteractionStore::pair_history(const DirectedPairKey& key, Duration lookback, Timestamp at) const {
  std::shared_lock lock(mutex_);
  PairHistory history{key, {}, 0};
  auto it = pair_index_.find(key);
  if (it == pair_index_.end()) return history;
  const Timestamp from = at - lookback;
  for (const auto& e : it->second) {
    if (e.created_at <= from) continue;
    if (e.created_at > at) break;
    history.events.push_back({e.event_id, e.created_at, e.toxicity});
    if (e.toxicity >= settings_.abuse_toxicity_min) ++history.abusive_count;
  }
  return history;
}

PairHistory InteractionStore::pair_history(const DirectedPairKey& key, Duration lookback) const {
  const auto at = now();
  if (!at) return PairHistory{key, {}, 0};
  return pair_history(key, lookback, *at);
}

std::size_t InteractionStore::pair_count(const DirectedPairKey& key, Duration lookback, Timestamp at) const {
  std::shared_lock lock(mutex_);
  auto it = pair_index_.find(key);
  if (it == pair_index_.end()) return 0;
  return count_in(it->second, at - lookback, at);
}

std::optional<double> InteractionStore::directionality_pct(const DirectedPairKey& key, Duration lookback,
                                                           Timestamp at) const {
  const auto forward = pair_count(key, lookback, at);
  const auto backward = pair_count(key.reversed(), lookback, at);
  if (forward + backward == 0) return std::nullopt;
  return 100.0 * static_cast<double>(forward) / static_cast<double>(forward + backward);
}

std::size_t InteractionStore::inbound_count(const std::string& target_id, Duration window, Timestamp at) const {
  std::shared_lock lock(mutex_);
  auto it = inbound_index_.find(target_id);
  if (it == inbound_index_.end()) return 0;
  return count_in(it->second, at - window, at);
}

double InteractionStore::inbound_baseline(const std::string& target_id, Duration window, Duration trailing,
                                          Timestamp at) const {
  if (window.count() <= 0) return 0.0;
  const auto windows = trailing / window;
  if (windows <= 0) return 0.0;
  std::shared_lock lock(mutex_);
  auto it = inbound_index_.find(target_id);
  if (it == inbound_index_.end()) return 0.0;
  // Adjacent half-open windows tile (at - (windows+1)w, at - w] exactly.
  const Timestamp end = at - window;
  const Timestamp start = end - window * windows;
  const auto total = count_in(it->second, start, end);
  return static_cast<double>(total) / static_cast<double>(windows);
}

std::vector<std::string> InteractionStore::inbound_event_ids(const std::string& target_id, Timestamp from,
                                                             Timestamp to) const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> ids;
  auto it = inbound_index_.find(target_id);
  if (it == inbound_index_.end()) return ids;
  for (const auto& e : it->second) {
    if (e.created_at > from && e.created_at <= to) ids.push_back(e.event_id);
  }
  return ids;
}

bool InteractionStore::contains(const std::string& event_id) const {
  std::shared_lock lock(mutex_);
  return events_.count(event_id) != 0;
}

std::optional<StoredEvent> InteractionStore::find_event(const std::string& event_id) const {
  std::shared_lock lock(mutex_);
  auto it = events_.find(event_id);
  if (it == events_.end()) return std::nullopt;
  return it->second;
}

std::size_t InteractionStore::event_count() const {
  std::shared_lock lock(mutex_);
  return events_.size();
}

std::size_t InteractionStore::skew_count() const {
  std::shared_lock lock(mutex_);
  return skew_count_;
}

std::optional<Timestamp> InteractionStore::now() const {
  std::shared_lock lock(mutex_);
  return latest_;
}

StoreSnapshot InteractionStore::snapshot() const {
  StoreSnapshot snap;
  {
    std::shared_lock lock(mutex_);
    snap.events.reserve(events_.size());
    for (const auto& [id, e] : events_) snap.events.push_back(e);
  }
  std::sort(snap.events.begin(), snap.events.end(), [](const StoredEvent& a, const StoredEvent& b) {
    if (a.event.created_at != b.event.created_at) return a.event.created_at < b.event.created_at;
    return a.event.event_id < b.event.event_id;
  });
  snap.profiles = profiles();
  return snap;
}

void InteractionStore::restore(const StoreSnapshot& snapshot) {
  std::unique_lock lock(mutex_);
  events_.clear();
  profiles_.clear();
  handle_index_.clear();
  pair_index_.clear();
  inbound_index_.clear();
  latest_.reset();
  skew_count_ = 0;
  for (const auto& p : snapshot.profiles) {
    handle_index_[lower_ascii(p.handle)] = p.user_id;
    profiles_[p.user_id] = p;
  }
  for (const auto& e : snapshot.events) append_locked(e);
}

}  // namespace modkit
