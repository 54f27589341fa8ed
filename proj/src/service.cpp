#include "modkit/service.hpp"

#include <algorithm>

#include <spdlog/spdlog.h>

#include "modkit/error.hpp"
#include "modkit/mentions.hpp"

namespace modkit {

ModerationService::ModerationService(AppConfig config, PlatformGateway& gateway, GenderClient& gender,
                                     ToxicityClient& toxicity, TargetSelection selection)
    : config_(std::move(config)),
      gateway_(gateway),
      gender_(gender),
      toxicity_(toxicity),
      selection_(selection),
      store_(config_.store_settings()),
      engine_(config_.decision_settings(), gateway),
      monitored_(config_.monitored_targets.begin(), config_.monitored_targets.end()) {
  for (const auto& p : gateway_.known_profiles()) store_.upsert_profile(p);
}

bool ModerationService::is_monitored(const std::string& user_id) const { return monitored_.count(user_id) != 0; }

Timestamp ModerationService::now() const { return store_.now().value_or(Timestamp{}); }

GenderLabel ModerationService::gender_of(const std::string& user_id) {
  {
    std::lock_guard lock(gender_memo_mutex_);
    if (auto it = gender_memo_.find(user_id); it != gender_memo_.end()) return it->second;
  }
  std::optional<UserProfile> profile = store_.profile(user_id);
  if (!profile && !user_id.empty() && user_id.front() != '@') {
    try {
      profile = gateway_.fetch_profile(user_id);
      store_.upsert_profile(*profile);
    } catch (const Error& e) {
      spdlog::debug("no profile for {}: {}", user_id, e.detail());
    }
  }
  GenderLabel label;
  if (profile) label = gender_.infer_from_display_name(profile->display_name);
  std::lock_guard lock(gender_memo_mutex_);
  gender_memo_[user_id] = label;
  return label;
}

IngestResult ModerationService::ingest(const InteractionEvent& event) {
  std::lock_guard writer(writer_);
  IngestResult result;
  if (store_.contains(event.event_id)) {
    result.duplicate = true;
    return result;
  }
  const ToxicityScore toxicity = toxicity_.score(event.text);
  const AppendOutcome outcome = store_.append_event(event, toxicity);
  result.duplicate = outcome.duplicate;
  result.clock_skew = outcome.clock_skew;
  if (outcome.duplicate) return result;

  std::size_t position = 0;
  for (const auto& key : outcome.keys) {
    ++position;
    if (selection_ == TargetSelection::monitored && !is_monitored(key.target_id)) continue;
    TargetEvaluation eval;
    eval.pair = key;
    eval.position = position;
    eval.originator_gender = gender_of(key.originator_id);
    eval.target_gender = gender_of(key.target_id);
    eval.in_scope = in_scope(eval.originator_gender, eval.target_gender, config_.scope);
    if (selection_ == TargetSelection::monitored && engine_.suppresses(key.target_id, event.created_at)) {
      engine_.suppress({event.event_id});
    }
    if (eval.in_scope) {
      eval.report = evaluate(event, key.target_id, store_, toxicity, config_.indicators);
      if (selection_ == TargetSelection::monitored) eval.prompts = engine_.prompts_for(*eval.report);
    }
    result.evaluations.push_back(std::move(eval));
  }
  return result;
}

void ModerationService::apply_suppression(const ActionRecord& action) {
  if (action.kind != ActionKind::delete_incoming || action.gateway_result == GatewayResult::failed) return;
  if (!action.subject.window_start || !action.subject.window_end) return;
  engine_.suppress(store_.inbound_event_ids(action.subject.pair.target_id, *action.subject.window_start,
                                            *action.subject.window_end));
}

std::optional<ActionRecord> ModerationService::decide(const std::string& prompt_id, Decision decision) {
  std::lock_guard writer(writer_);
  auto action = engine_.record_decision({prompt_id, decision, now()});
  if (action) apply_suppression(*action);
  return action;
}

std::vector<ModerationPrompt> ModerationService::pending_prompts(const std::string& target_id) {
  return engine_.pending_prompts(target_id, now());
}

StoreSnapshot ModerationService::snapshot() const {
  StoreSnapshot snap = store_.snapshot();
  snap.prompts = engine_.prompts();
  snap.decisions = engine_.decisions();
  snap.actions = engine_.actions();
  return snap;
}

void ModerationService::restore(const StoreSnapshot& snapshot) {
  std::lock_guard writer(writer_);
  store_.restore(snapshot);
  for (const auto& p : gateway_.known_profiles()) {
    if (!store_.profile(p.user_id)) store_.upsert_profile(p);
  }
  engine_.restore(snapshot.prompts, snapshot.decisions, snapshot.actions);
  for (const auto& a : snapshot.actions) apply_suppression(a);
  std::lock_guard lock(gender_memo_mutex_);
  gender_memo_.clear();
}

Json to_json(const PipelineSummary& s) {
  Json j;
  j["read"] = s.read;
  j["malformed"] = s.malformed;
  j["out_of_scope"] = s.out_of_scope;
  j["emitted"] = s.emitted;
  j["mentions_dropped"] = s.mentions_dropped;
  j["users_labelled"] = s.users_labelled;
  j["users_total"] = s.users_total;
  j["gender_coverage"] = s.gender_coverage();
  return j;
}

}  // namespace modkit
