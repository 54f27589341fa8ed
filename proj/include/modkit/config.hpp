#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "modkit/clients.hpp"
#include "modkit/codec.hpp"
#include "modkit/decisions.hpp"
#include "modkit/indicators.hpp"

namespace modkit {

struct AppConfig {
  IndicatorConfig indicators;
  ClientConfig gender_client;
  double gender_confidence_min = kDefaultGenderConfidenceMin;
  ClientConfig toxicity_client;
  ScopePolicy scope;
  std::vector<std::string> monitored_targets;
  std::filesystem::path store_dir = "modkit-store";
  Duration prompt_ttl = days(7);
  std::string listen_address = "127.0.0.1:8080";

  // Every range violation, empty when valid.
  std::vector<std::string> violations() const;
  // Throws ConfigInvalid listing all violations.
  void validate() const;
  // serve and replay need at least one monitored target.
  void require_monitored_targets() const;

  StoreSettings store_settings() const { return {indicators.abuse_toxicity_min, indicators.skew_tolerance}; }
  DecisionSettings decision_settings() const { return {prompt_ttl, indicators.volume_window}; }

  std::string listen_host() const;
  int listen_port() const;
};

// Missing keys take defaults; unknown keys and type errors are violations.
// API keys fall back to MODKIT_GENDER_API_KEY / MODKIT_TOXICITY_API_KEY, and
// MODKIT_OFFLINE=1 forces both clients offline.
AppConfig config_from_json(const Json& j);
AppConfig load_config(const std::filesystem::path& path);
Json config_to_json(const AppConfig& config);

}  // namespace modkit
