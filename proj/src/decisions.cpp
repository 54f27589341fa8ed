#include "modkit/decisions.hpp"

#include <algorithm>
#include <cstdio>

#include "modkit/error.hpp"

namespace modkit {

namespace {

std::string sequence_id(const char* prefix, std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s-%06zu", prefix, n);
  return buf;
}

std::size_t sequence_of(const std::string& id) {
  const auto dash = id.rfind('-');
  if (dash == std::string::npos) return 0;
  try {
    return std::stoul(id.substr(dash + 1));
  } catch (...) {
    return 0;
  }
}

}  // namespace

std::string longitudinal_message(std::size_t prior_abusive_count) {
  return "This person has tweeted you " + std::to_string(prior_abusive_count) +
         " times before- would you like to block them?";
}

ActionKind action_for(IndicatorKind kind) {
  return kind == IndicatorKind::volumetric ? ActionKind::delete_incoming : ActionKind::block_account;
}

bool in_scope(const GenderLabel& originator, const GenderLabel& target, const ScopePolicy& policy) {
  if (target.value != Gender::female) return false;
  if (originator.value == Gender::male && target.value == Gender::male) return false;
  if (originator.value == Gender::unknown && !policy.unknown_originator_in_scope) return false;
  return true;
}

DecisionEngine::DecisionEngine(DecisionSettings settings, PlatformGateway& gateway)
    : settings_(settings), gateway_(gateway) {}

void DecisionEngine::expire_locked(Timestamp now) {
  for (auto& p : prompts_) {
    if (p.status == PromptStatus::pending && now - p.created_at > settings_.prompt_ttl) p.status = PromptStatus::expired;
  }
}

void DecisionEngine::expire(Timestamp now) {
  std::lock_guard lock(mutex_);
  expire_locked(now);
}

bool DecisionEngine::has_pending_locked(const DirectedPairKey& pair, IndicatorKind kind) const {
  return std::any_of(prompts_.begin(), prompts_.end(), [&](const ModerationPrompt& p) {
    if (p.status != PromptStatus::pending || p.kind != kind) return false;
    if (kind == IndicatorKind::volumetric) return p.pair.target_id == pair.target_id;
    return p.pair == pair;
  });
}

std::vector<ModerationPrompt> DecisionEngine::prompts_for(const IndicatorReport& report) {
  std::lock_guard lock(mutex_);
  std::vector<ModerationPrompt> created;
  if (blocked_.count(report.pair) != 0) return created;
  if (suppresses_locked(report.pair.target_id, report.at)) return created;
  expire_locked(report.at);

  auto emit = [&](IndicatorKind kind, std::string message) {
    if (has_pending_locked(report.pair, kind)) return;
    ModerationPrompt p;
    p.prompt_id = sequence_id("prm", next_prompt_++);
    p.pair = report.pair;
    p.event_id = report.event_id;
    p.kind = kind;
    p.message = std::move(message);
    p.proposed_action = action_for(kind);
    p.created_at = report.at;
    p.status = PromptStatus::pending;
    prompt_index_[p.prompt_id] = prompts_.size();
    prompts_.push_back(p);
    created.push_back(std::move(p));
  };

  if (report.longitudinal.triggered) {
    emit(IndicatorKind::longitudinal, longitudinal_message(report.longitudinal.prior_abusive_count));
  }
  if (report.informational.triggered) emit(IndicatorKind::informational, std::string(kInformationalMessage));
  if (report.volumetric.triggered) emit(IndicatorKind::volumetric, std::string(kVolumetricMessage));
  return created;
}

ModerationPrompt* DecisionEngine::find_locked(const std::string& prompt_id) {
  auto it = prompt_index_.find(prompt_id);
  return it == prompt_index_.end() ? nullptr : &prompts_[it->second];
}

std::optional<ActionRecord> DecisionEngine::record_decision(const UserDecision& decision) {
  std::lock_guard lock(mutex_);
  ModerationPrompt* p = find_locked(decision.prompt_id);
  if (p == nullptr) throw Error(ErrorCode::UnknownPrompt, "no prompt " + decision.prompt_id);
  expire_locked(decision.decided_at);
  if (p->status != PromptStatus::pending) {
    throw Error(ErrorCode::AlreadyDecided, decision.prompt_id + " is " + std::string(to_string(p->status)));
  }
  decisions_.push_back(decision);
  if (decision.decision == Decision::dismiss) {
    p->status = PromptStatus::dismissed;
    return std::nullopt;
  }
  p->status = PromptStatus::accepted;

  ActionRecord action;
  action.action_id = sequence_id("act", next_action_++);
  action.prompt_id = p->prompt_id;
  action.kind = p->proposed_action;
  action.subject.pair = p->pair;
  action.issued_at = decision.decided_at;
  if (action.kind == ActionKind::delete_incoming) {
    action.subject.window_start = decision.decided_at - settings_.volume_window;
    action.subject.window_end = decision.decided_at + settings_.volume_window;
  }

  const auto cap = gateway_.capabilities();
  const bool supported = action.kind == ActionKind::block_account ? cap.can_block : cap.can_suppress;
  if (supported) {
    try {
      action.gateway_result = gateway_.execute(action);
    } catch (const Error&) {
      action.gateway_result = GatewayResult::failed;
    }
  } else {
    action.gateway_result = GatewayResult::failed;
  }
  note_applied_locked(action);
  actions_.push_back(action);
  return action;
}

std::vector<ModerationPrompt> DecisionEngine::pending_prompts(const std::string& target_id, Timestamp now) {
  std::lock_guard lock(mutex_);
  expire_locked(now);
  std::vector<ModerationPrompt> out;
  for (auto it = prompts_.rbegin(); it != prompts_.rend(); ++it) {
    if (it->status == PromptStatus::pending && it->pair.target_id == target_id) out.push_back(*it);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ModerationPrompt& a, const ModerationPrompt& b) { return a.created_at > b.created_at; });
  return out;
}

std::optional<ModerationPrompt> DecisionEngine::find_pending(const DirectedPairKey& pair, IndicatorKind kind) const {
  std::lock_guard lock(mutex_);
  for (const auto& p : prompts_) {
    if (p.status == PromptStatus::pending && p.kind == kind && p.pair == pair) return p;
  }
  return std::nullopt;
}

std::optional<ModerationPrompt> DecisionEngine::prompt(const std::string& prompt_id) const {
  std::lock_guard lock(mutex_);
  auto it = prompt_index_.find(prompt_id);
  if (it == prompt_index_.end()) return std::nullopt;
  return prompts_[it->second];
}

bool DecisionEngine::is_blocked(const DirectedPairKey& pair) const {
  std::lock_guard lock(mutex_);
  return blocked_.count(pair) != 0;
}

void DecisionEngine::note_applied_locked(const ActionRecord& action) {
  if (action.gateway_result == GatewayResult::failed) return;
  if (action.kind == ActionKind::block_account) {
    blocked_.insert(action.subject.pair);
  } else if (action.subject.window_start && action.subject.window_end) {
    suppression_windows_[action.subject.pair.target_id].emplace_back(*action.subject.window_start,
                                                                      *action.subject.window_end);
  }
}

bool DecisionEngine::suppresses_locked(const std::string& target_id, Timestamp at) const {
  auto it = suppression_windows_.find(target_id);
  if (it == suppression_windows_.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(),
                     [&](const auto& w) { return at > w.first && at <= w.second; });
}

bool DecisionEngine::suppresses(const std::string& target_id, Timestamp at) const {
  std::lock_guard lock(mutex_);
  return suppresses_locked(target_id, at);
}

bool DecisionEngine::is_suppressed(const std::string& event_id) const {
  std::lock_guard lock(mutex_);
  return suppressed_.count(event_id) != 0;
}

void DecisionEngine::suppress(const std::vector<std::string>& event_ids) {
  std::lock_guard lock(mutex_);
  suppressed_.insert(event_ids.begin(), event_ids.end());
}

std::vector<ModerationPrompt> DecisionEngine::prompts() const {
  std::lock_guard lock(mutex_);
  return prompts_;
}

std::vector<UserDecision> DecisionEngine::decisions() const {
  std::lock_guard lock(mutex_);
  return decisions_;
}

std::vector<ActionRecord> DecisionEngine::actions() const {
  std::lock_guard lock(mutex_);
  return actions_;
}

void DecisionEngine::restore(const std::vector<ModerationPrompt>& prompts, const std::vector<UserDecision>& decisions,
                             const std::vector<ActionRecord>& actions) {
  std::lock_guard lock(mutex_);
  prompts_ = prompts;
  decisions_ = decisions;
  actions_ = actions;
  prompt_index_.clear();
  blocked_.clear();
  next_prompt_ = 1;
  next_action_ = 1;
  for (std::size_t i = 0; i < prompts_.size(); ++i) {
    prompt_index_[prompts_[i].prompt_id] = i;
    next_prompt_ = std::max(next_prompt_, sequence_of(prompts_[i].prompt_id) + 1);
  }
  suppression_windows_.clear();
  for (const auto& a : actions_) {
    next_action_ = std::max(next_action_, sequence_of(a.action_id) + 1);
    note_applied_locked(a);
  }
}

}  // namespace modkit
