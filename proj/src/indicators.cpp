#include "modkit/indicators.hpp"

#include <algorithm>

#include "modkit/mentions.hpp"

namespace modkit {

double info_score(const UserProfile& p) {
  const double bio = std::min(static_cast<double>(utf8_length(p.bio)) / 160.0, 1.0);
  const double urls = static_cast<double>(std::min<std::size_t>(p.urls.size(), 3)) / 3.0;
  return 0.5 * bio + 0.3 * urls + 0.1 * (p.has_image ? 1.0 : 0.0) + 0.1 * (p.location ? 1.0 : 0.0);
}

InformationalReport informational_asymmetry(const UserProfile& originator, const UserProfile& target,
                                            const IndicatorConfig& config) {
  InformationalReport r;
  const double so = info_score(originator);
  const double st = info_score(target);
  r.originator_info_score = so;
  r.target_info_score = st;
  r.target_share_pct = (so + st) == 0.0 ? 50.0 : 100.0 * st / (st + so);
  r.triggered = so < config.low_info_threshold && *r.target_share_pct > config.share_trigger_pct;
  return r;
}

VolumetricReport volumetric_asymmetry(const DirectedPairKey& key, const InteractionStore& store,
                                      const IndicatorConfig& config, Timestamp at) {
  VolumetricReport r;
  r.inbound_count = store.inbound_count(key.target_id, config.volume_window, at);
  r.baseline = store.inbound_baseline(key.target_id, config.volume_window, config.baseline_trailing, at);
  const auto forward = store.pair_count(key, config.lookback, at);
  const auto backward = store.pair_count(key.reversed(), config.lookback, at);
  r.pair_events = forward + backward;
  if (r.pair_events > 0) {
    r.directionality_pct = 100.0 * static_cast<double>(forward) / static_cast<double>(r.pair_events);
  }
  const double volume_bar = std::max(static_cast<double>(config.volume_abs_min), config.volume_multiplier * r.baseline);
  const bool volume = static_cast<double>(r.inbound_count) >= volume_bar;
  const bool direction = r.directionality_pct && *r.directionality_pct >= config.direction_trigger_pct &&
                         static_cast<long long>(r.pair_events) >= config.pair_events_min;
  r.triggered = volume || direction;
  return r;
}

LongitudinalReport longitudinal(const DirectedPairKey& key, const InteractionStore& store,
                                const IndicatorConfig& config, Timestamp at, const std::string& event_id) {
  LongitudinalReport r;
  const auto history = store.pair_history(key, config.lookback, at);
  const double cut = store.settings().abuse_toxicity_min;
  for (const auto& e : history.events) {
    const bool prior = e.created_at < at || (e.created_at == at && e.event_id < event_id);
    if (prior && e.toxicity >= cut) ++r.prior_abusive_count;
  }
  r.triggered = static_cast<long long>(r.prior_abusive_count) >= config.longitudinal_min;
  return r;
}

IndicatorReport evaluate(const InteractionEvent& event, const std::string& target_id, const InteractionStore& store,
                         const ToxicityScore& toxicity, const IndicatorConfig& config) {
  IndicatorReport report;
  report.pair = {event.author_id, target_id};
  report.event_id = event.event_id;
  report.at = event.created_at;
  report.toxicity = toxicity;
  report.longitudinal = longitudinal(report.pair, store, config, event.created_at, event.event_id);
  report.volumetric = volumetric_asymmetry(report.pair, store, config, event.created_at);
  const auto originator = store.profile(event.author_id);
  const auto target = store.profile(target_id);
  if (originator && target) report.informational = informational_asymmetry(*originator, *target, config);
  return report;
}

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const IndicatorReport& r) {
  Json j;
  j["pair"] = to_json(r.pair);
  j["event_id"] = r.event_id;
  j["at"] = format_rfc3339(r.at);
  Json& l = j["longitudinal"];
  l["prior_abusive_count"] = r.longitudinal.prior_abusive_count;
  l["triggered"] = r.longitudinal.triggered;
  Json& i = j["informational"];
  i["originator_info_score"] = optional_number(r.informational.originator_info_score);
  i["target_info_score"] = optional_number(r.informational.target_info_score);
  i["target_share_pct"] = optional_number(r.informational.target_share_pct);
  i["triggered"] = r.informational.triggered;
  Json& v = j["volumetric"];
  v["inbound_count"] = r.volumetric.inbound_count;
  v["baseline"] = r.volumetric.baseline;
  v["directionality_pct"] = optional_number(r.volumetric.directionality_pct);
  v["pair_events"] = r.volumetric.pair_events;
  v["triggered"] = r.volumetric.triggered;
  j["toxicity"] = to_json(r.toxicity);
  return j;
}

}  // namespace modkit
