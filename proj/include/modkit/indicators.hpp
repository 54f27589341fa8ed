#pragma once

#include <optional>
#include <string>

#include "modkit/codec.hpp"
#include "modkit/store.hpp"
#include "modkit/types.hpp"

namespace modkit {

// Thresholds for the three indicators. Names match the "indicators" section
// of the JSON config.
struct IndicatorConfig {
  double low_info_threshold = 0.2;
  double share_trigger_pct = 65.0;
  Duration volume_window = hours(1);
  Duration baseline_trailing = days(7);
  long long volume_abs_min = 10;
  double volume_multiplier = 3.0;
  double direction_trigger_pct = 90.0;
  long long pair_events_min = 10;
  long long longitudinal_min = 3;
  Duration lookback = days(365);
  double abuse_toxicity_min = 0.70;
  Duration skew_tolerance = minutes(5);

  bool operator==(const IndicatorConfig&) const = default;
};

struct LongitudinalReport {
  std::size_t prior_abusive_count = 0;
  bool triggered = false;

  bool operator==(const LongitudinalReport&) const = default;
};

// Scores are absent when either profile is unknown.
struct InformationalReport {
  std::optional<double> originator_info_score;
  std::optional<double> target_info_score;
  std::optional<double> target_share_pct;
  bool triggered = false;

  bool operator==(const InformationalReport&) const = default;
};

struct VolumetricReport {
  std::size_t inbound_count = 0;
  double baseline = 0.0;
  std::optional<double> directionality_pct;
  std::size_t pair_events = 0;
  bool triggered = false;

  bool operator==(const VolumetricReport&) const = default;
};

struct IndicatorReport {
  DirectedPairKey pair;
  std::string event_id;
  Timestamp at{};
  LongitudinalReport longitudinal;
  InformationalReport informational;
  VolumetricReport volumetric;
  ToxicityScore toxicity;

  bool any_triggered() const { return longitudinal.triggered || informational.triggered || volumetric.triggered; }
  bool operator==(const IndicatorReport&) const = default;
};

// 0.5 min(|bio|/160, 1) + 0.3 min(|urls|, 3)/3 + 0.1 [image] + 0.1 [location].
double info_score(const UserProfile& profile);

InformationalReport informational_asymmetry(const UserProfile& originator, const UserProfile& target,
                                            const IndicatorConfig& config);

VolumetricReport volumetric_asymmetry(const DirectedPairKey& key, const InteractionStore& store,
                                      const IndicatorConfig& config, Timestamp at);

// Counts abusive o->t events strictly before (at, event_id) within lookback.
LongitudinalReport longitudinal(const DirectedPairKey& key, const InteractionStore& store,
                                const IndicatorConfig& config, Timestamp at, const std::string& event_id);

// Profiles come from the store; a missing one leaves the informational
// report untriggered with absent scores.
IndicatorReport evaluate(const InteractionEvent& event, const std::string& target_id, const InteractionStore& store,
                         const ToxicityScore& toxicity, const IndicatorConfig& config);

Json to_json(const IndicatorReport& report);

}  // namespace modkit
