#include "modkit/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include "modkit/error.hpp"

namespace modkit {

namespace {

class Reader {
 public:
  explicit Reader(std::vector<std::string>& problems) : problems_(problems) {}

  void check_keys(const Json& obj, const std::string& where, const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (allowed.count(it.key()) == 0) problems_.push_back(where + ": unknown key '" + it.key() + "'");
    }
  }

  const Json* object(const Json& parent, const std::string& key, const std::string& where) {
    auto it = parent.find(key);
    if (it == parent.end() || it->is_null()) return nullptr;
    if (!it->is_object()) {
      problems_.push_back(where + key + ": expected an object");
      return nullptr;
    }
    return &*it;
  }

  void number(const Json& obj, const std::string& key, const std::string& where, double& out) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_number()) {
      problems_.push_back(where + key + ": expected a number");
      return;
    }
    out = it->get<double>();
  }

  void integer(const Json& obj, const std::string& key, const std::string& where, long long& out) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_number_integer()) {
      problems_.push_back(where + key + ": expected an integer");
      return;
    }
    out = it->get<long long>();
  }

  void duration(const Json& obj, const std::string& key, const std::string& where, Duration unit, Duration& out) {
    long long v = out / unit;
    auto it = obj.find(key);
    if (it == obj.end()) return;
    integer(obj, key, where, v);
    out = unit * v;
  }

  void text(const Json& obj, const std::string& key, const std::string& where, std::string& out) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_string()) {
      problems_.push_back(where + key + ": expected a string");
      return;
    }
    out = it->get<std::string>();
  }

  void optional_text(const Json& obj, const std::string& key, const std::string& where,
                     std::optional<std::string>& out) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    if (it->is_null()) {
      out.reset();
      return;
    }
    if (!it->is_string()) {
      problems_.push_back(where + key + ": expected a string or null");
      return;
    }
    out = it->get<std::string>();
  }

  void boolean(const Json& obj, const std::string& key, const std::string& where, bool& out) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_boolean()) {
      problems_.push_back(where + key + ": expected a boolean");
      return;
    }
    out = it->get<bool>();
  }

  std::vector<std::string>& problems_;
};

void read_client(Reader& r, const Json& obj, const std::string& where, ClientConfig& c, double* confidence_min) {
  std::set<std::string> keys{"mode", "endpoint", "api_key", "timeout_ms", "cache_capacity"};
  if (confidence_min) keys.insert("confidence_min");
  r.check_keys(obj, where, keys);
  std::string mode = c.mode == ClientMode::remote ? "remote" : "offline";
  r.text(obj, "mode", where + ".", mode);
  if (mode == "remote") {
    c.mode = ClientMode::remote;
  } else if (mode == "offline") {
    c.mode = ClientMode::offline;
  } else {
    r.problems_.push_back(where + ".mode: expected \"offline\" or \"remote\"");
  }
  r.optional_text(obj, "endpoint", where + ".", c.endpoint);
  r.optional_text(obj, "api_key", where + ".", c.api_key);
  long long timeout = c.timeout.count();
  r.integer(obj, "timeout_ms", where + ".", timeout);
  c.timeout = std::chrono::milliseconds(timeout);
  long long cap = static_cast<long long>(c.cache_capacity);
  r.integer(obj, "cache_capacity", where + ".", cap);
  if (cap <= 0) {
    r.problems_.push_back(where + ".cache_capacity: must be positive");
  } else {
    c.cache_capacity = static_cast<std::size_t>(cap);
  }
  if (confidence_min) r.number(obj, "confidence_min", where + ".", *confidence_min);
}

Json client_to_json(const ClientConfig& c) {
  Json j;
  j["mode"] = c.mode == ClientMode::remote ? "remote" : "offline";
  j["endpoint"] = c.endpoint ? Json(*c.endpoint) : Json(nullptr);
  j["api_key"] = c.api_key ? Json(*c.api_key) : Json(nullptr);
  j["timeout_ms"] = c.timeout.count();
  j["cache_capacity"] = c.cache_capacity;
  return j;
}

void env_key(ClientConfig& c, const char* var) {
  if (c.api_key) return;
  if (const char* v = std::getenv(var); v != nullptr && *v != '\0') c.api_key = std::string(v);
}

void range(std::vector<std::string>& out, const char* name, double v, double lo, double hi) {
  if (!(v >= lo && v <= hi)) {
    out.push_back(std::string("indicators.") + name + ": " + std::to_string(v) + " outside [" + std::to_string(lo) +
                  ", " + std::to_string(hi) + "]");
  }
}

void at_least(std::vector<std::string>& out, const std::string& name, long long v, long long lo) {
  if (v < lo) out.push_back(name + ": " + std::to_string(v) + " must be >= " + std::to_string(lo));
}

}  // namespace

std::vector<std::string> AppConfig::violations() const {
  std::vector<std::string> out;
  const auto& c = indicators;
  range(out, "low_info_threshold", c.low_info_threshold, 0.0, 1.0);
  range(out, "share_trigger_pct", c.share_trigger_pct, 0.0, 100.0);
  range(out, "direction_trigger_pct", c.direction_trigger_pct, 0.0, 100.0);
  range(out, "abuse_toxicity_min", c.abuse_toxicity_min, 0.0, 1.0);
  range(out, "volume_multiplier", c.volume_multiplier, 0.0, 1e6);
  at_least(out, "indicators.volume_window_minutes", c.volume_window.count() / 60, 1);
  if (c.baseline_trailing < c.volume_window) out.push_back("indicators.baseline_trailing_hours: must cover at least one volume window");
  at_least(out, "indicators.volume_abs_min", c.volume_abs_min, 1);
  at_least(out, "indicators.pair_events_min", c.pair_events_min, 1);
  at_least(out, "indicators.longitudinal_min", c.longitudinal_min, 1);
  at_least(out, "indicators.lookback_days", c.lookback.count() / 86400, 1);
  at_least(out, "indicators.skew_tolerance_seconds", c.skew_tolerance.count(), 0);
  if (!(gender_confidence_min >= 0.0 && gender_confidence_min <= 1.0)) {
    out.push_back("clients.gender.confidence_min: outside [0, 1]");
  }
  for (const auto& [name, client] : {std::pair{"gender", &gender_client}, std::pair{"toxicity", &toxicity_client}}) {
    const std::string where = std::string("clients.") + name;
    if (client->mode == ClientMode::remote) {
      if (!client->endpoint || client->endpoint->empty()) out.push_back(where + ": remote mode requires an endpoint");
      if (!client->api_key || client->api_key->empty()) out.push_back(where + ": remote mode requires an api_key");
    }
    at_least(out, where + ".timeout_ms", client->timeout.count(), 1);
  }
  at_least(out, "prompt_ttl_days", prompt_ttl.count() / 86400, 1);
  for (const auto& t : monitored_targets) {
    if (t.empty()) out.push_back("monitored_targets: empty user id");
  }
  const auto colon = listen_address.rfind(':');
  if (colon == std::string::npos || colon == 0) {
    out.push_back("listen_address: expected host:port");
  } else {
    const int port = listen_port();
    if (port < 0 || port > 65535) out.push_back("listen_address: port out of range");
  }
  return out;
}

void AppConfig::validate() const {
  const auto problems = violations();
  if (problems.empty()) return;
  std::string detail;
  for (const auto& p : problems) detail += (detail.empty() ? "" : "; ") + p;
  throw Error(ErrorCode::ConfigInvalid, detail);
}

void AppConfig::require_monitored_targets() const {
  if (monitored_targets.empty()) throw Error(ErrorCode::ConfigInvalid, "monitored_targets must be nonempty");
}

std::string AppConfig::listen_host() const {
  const auto colon = listen_address.rfind(':');
  return colon == std::string::npos ? listen_address : listen_address.substr(0, colon);
}

int AppConfig::listen_port() const {
  const auto colon = listen_address.rfind(':');
  if (colon == std::string::npos) return -1;
  try {
    std::size_t used = 0;
    const std::string digits = listen_address.substr(colon + 1);
    const int port = std::stoi(digits, &used);
    return used == digits.size() ? port : -1;
  } catch (...) {
    return -1;
  }
}

AppConfig config_from_json(const Json& j) {
  AppConfig cfg;
  std::vector<std::string> problems;
  Reader r(problems);
  if (!j.is_object()) throw Error(ErrorCode::ConfigInvalid, "config root must be an object");
  r.check_keys(j, "config", {"indicators", "clients", "scope", "monitored_targets", "store_dir", "prompt_ttl_days", "listen_address"});

  if (const Json* ind = r.object(j, "indicators", "")) {
    const std::string w = "indicators.";
    r.check_keys(*ind, "indicators",
                 {"low_info_threshold", "share_trigger_pct", "volume_window_minutes", "baseline_trailing_hours",
                  "volume_abs_min", "volume_multiplier", "direction_trigger_pct", "pair_events_min", "longitudinal_min",
                  "lookback_days", "abuse_toxicity_min", "skew_tolerance_seconds"});
    auto& c = cfg.indicators;
    r.number(*ind, "low_info_threshold", w, c.low_info_threshold);
    r.number(*ind, "share_trigger_pct", w, c.share_trigger_pct);
    r.duration(*ind, "volume_window_minutes", w, minutes(1), c.volume_window);
    r.duration(*ind, "baseline_trailing_hours", w, hours(1), c.baseline_trailing);
    r.integer(*ind, "volume_abs_min", w, c.volume_abs_min);
    r.number(*ind, "volume_multiplier", w, c.volume_multiplier);
    r.number(*ind, "direction_trigger_pct", w, c.direction_trigger_pct);
    r.integer(*ind, "pair_events_min", w, c.pair_events_min);
    r.integer(*ind, "longitudinal_min", w, c.longitudinal_min);
    r.duration(*ind, "lookback_days", w, days(1), c.lookback);
    r.number(*ind, "abuse_toxicity_min", w, c.abuse_toxicity_min);
    r.duration(*ind, "skew_tolerance_seconds", w, Duration{1}, c.skew_tolerance);
  }
  if (const Json* clients = r.object(j, "clients", "")) {
    r.check_keys(*clients, "clients", {"gender", "toxicity"});
    if (const Json* g = r.object(*clients, "gender", "clients.")) {
      read_client(r, *g, "clients.gender", cfg.gender_client, &cfg.gender_confidence_min);
    }
    if (const Json* t = r.object(*clients, "toxicity", "clients.")) {
      read_client(r, *t, "clients.toxicity", cfg.toxicity_client, nullptr);
    }
  }
  if (const Json* scope = r.object(j, "scope", "")) {
    r.check_keys(*scope, "scope", {"unknown_originator_in_scope"});
    r.boolean(*scope, "unknown_originator_in_scope", "scope.", cfg.scope.unknown_originator_in_scope);
  }
  if (auto it = j.find("monitored_targets"); it != j.end()) {
    if (!it->is_array()) {
      problems.push_back("monitored_targets: expected an array of strings");
    } else {
      for (const auto& t : *it) {
        if (t.is_string()) {
          cfg.monitored_targets.push_back(t.get<std::string>());
        } else {
          problems.push_back("monitored_targets: non-string entry");
        }
      }
    }
  }
  std::string store_dir = cfg.store_dir.string();
  r.text(j, "store_dir", "", store_dir);
  cfg.store_dir = store_dir;
  r.duration(j, "prompt_ttl_days", "", days(1), cfg.prompt_ttl);
  r.text(j, "listen_address", "", cfg.listen_address);

  env_key(cfg.gender_client, "MODKIT_GENDER_API_KEY");
  env_key(cfg.toxicity_client, "MODKIT_TOXICITY_API_KEY");
  if (const char* v = std::getenv("MODKIT_OFFLINE"); v != nullptr && std::string_view(v) == "1") {
    cfg.gender_client.mode = ClientMode::offline;
    cfg.toxicity_client.mode = ClientMode::offline;
  }

  for (auto& p : cfg.violations()) problems.push_back(std::move(p));
  if (!problems.empty()) {
    std::string detail;
    for (const auto& p : problems) detail += (detail.empty() ? "" : "; ") + p;
    throw Error(ErrorCode::ConfigInvalid, detail);
  }
  return cfg;
}

AppConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot read config " + path.string());
  const Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::ConfigInvalid, "config is not valid JSON: " + path.string());
  return config_from_json(j);
}

Json config_to_json(const AppConfig& cfg) {
  Json j;
  const auto& c = cfg.indicators;
  Json& ind = j["indicators"];
  ind["low_info_threshold"] = c.low_info_threshold;
  ind["share_trigger_pct"] = c.share_trigger_pct;
  ind["volume_window_minutes"] = c.volume_window.count() / 60;
  ind["baseline_trailing_hours"] = c.baseline_trailing.count() / 3600;
  ind["volume_abs_min"] = c.volume_abs_min;
  ind["volume_multiplier"] = c.volume_multiplier;
  ind["direction_trigger_pct"] = c.direction_trigger_pct;
  ind["pair_events_min"] = c.pair_events_min;
  ind["longitudinal_min"] = c.longitudinal_min;
  ind["lookback_days"] = c.lookback.count() / 86400;
  ind["abuse_toxicity_min"] = c.abuse_toxicity_min;
  ind["skew_tolerance_seconds"] = c.skew_tolerance.count();
  Json gender = client_to_json(cfg.gender_client);
  gender["confidence_min"] = cfg.gender_confidence_min;
  j["clients"]["gender"] = gender;
  j["clients"]["toxicity"] = client_to_json(cfg.toxicity_client);
  j["scope"]["unknown_originator_in_scope"] = cfg.scope.unknown_originator_in_scope;
  j["monitored_targets"] = cfg.monitored_targets;
  j["store_dir"] = cfg.store_dir.string();
  j["prompt_ttl_days"] = cfg.prompt_ttl.count() / 86400;
  j["listen_address"] = cfg.listen_address;
  return j;
}

}  // namespace modkit
