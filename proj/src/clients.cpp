#include "modkit/clients.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <spdlog/spdlog.h>

#include "modkit/codec.hpp"
#include "modkit/error.hpp"
#include "modkit/mentions.hpp"

namespace modkit {

namespace {

bool offline_forced() {
  const char* v = std::getenv("MODKIT_OFFLINE");
  return v != nullptr && std::string_view(v) == "1";
}

ClientConfig effective(ClientConfig config) {
  if (offline_forced()) config.mode = ClientMode::offline;
  return config;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

// Bytes >= 0x80 belong to multi-byte characters and are kept inside tokens.
bool is_token_core(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

}  // namespace

void ClientConfig::validate(std::string_view name) const {
  if (mode != ClientMode::remote) return;
  std::string problems;
  if (!endpoint || endpoint->empty()) problems += std::string(name) + ": remote mode requires an endpoint; ";
  if (!api_key || api_key->empty()) problems += std::string(name) + ": remote mode requires an api_key; ";
  if (cache_capacity == 0) problems += std::string(name) + ": cache_capacity must be positive; ";
  if (!problems.empty()) throw Error(ErrorCode::ConfigInvalid, problems);
}

std::vector<std::string> toxicity_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t end = i;
    while (end < text.size() && !is_space(text[end])) ++end;
    std::size_t b = i;
    std::size_t e = end;
    while (b < e && !is_token_core(text[b])) ++b;
    while (e > b && !is_token_core(text[e - 1])) --e;
    if (e > b) tokens.push_back(lower_ascii(text.substr(b, e - b)));
    i = end;
  }
  return tokens;
}

double offline_toxicity(std::string_view text) {
  const auto tokens = toxicity_tokens(text);
  const auto hits = static_cast<double>(
      std::count_if(tokens.begin(), tokens.end(), [](const std::string& t) { return in_offline_lexicon(t); }));
  const double n = std::max<double>(1.0, static_cast<double>(tokens.size()));
  return std::min(1.0, hits / n * 4.0);
}

GenderClient::GenderClient(ClientConfig config, double confidence_min, std::shared_ptr<HttpTransport> transport)
    : config_(effective(std::move(config))),
      confidence_min_(confidence_min),
      transport_(std::move(transport)),
      cache_(config_.cache_capacity) {
  config_.validate("gender");
  if (config_.mode == ClientMode::remote && !transport_) transport_ = make_default_transport();
}

GenderLabel GenderClient::apply_threshold(Gender g, double confidence, GenderSource source) const {
  confidence = std::clamp(confidence, 0.0, 1.0);
  if (confidence < confidence_min_) g = Gender::unknown;
  return {g, confidence, source};
}

GenderLabel GenderClient::from_offline(const std::string& name) const {
  auto entry = lookup_offline_name(name);
  if (!entry) return {Gender::unknown, 0.0, GenderSource::unresolved};
  return apply_threshold(entry->gender, entry->confidence, GenderSource::offline_table);
}

std::optional<GenderLabel> GenderClient::query_remote(const std::string& name) {
  ++remote_calls_;
  auto resp = transport_->get(*config_.endpoint, {{"name", name}, {"key", *config_.api_key}}, config_.timeout);
  if (!resp || resp->status != 200) return std::nullopt;
  const auto body = Json::parse(resp->body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) return std::nullopt;
  const auto gender = body.find("gender");
  if (gender == body.end() || gender->is_null()) {
    // The service does not know the name; the bundled table may.
    return from_offline(name);
  }
  const auto accuracy = body.find("accuracy");
  if (!gender->is_string() || accuracy == body.end() || !accuracy->is_number()) return std::nullopt;
  const auto g = gender_from_string(gender->get<std::string>());
  if (!g || *g == Gender::unknown) return std::nullopt;
  return apply_threshold(*g, accuracy->get<double>() / 100.0, GenderSource::remote_api);
}

GenderLabel GenderClient::infer(std::string_view first_name) {
  const std::string name(first_name);
  if (name.empty()) return {};
  if (auto hit = cache_.get(name)) {
    ++cache_hits_;
    return *hit;
  }
  GenderLabel label;
  if (config_.mode == ClientMode::remote) {
    if (auto remote = query_remote(name)) {
      label = *remote;
    } else {
      ++remote_failures_;
      spdlog::warn("gender endpoint unavailable for '{}', using offline table", name);
      label = from_offline(name);
    }
  } else {
    label = from_offline(name);
  }
  cache_.put(name, label);
  return label;
}

GenderLabel GenderClient::infer_from_display_name(std::string_view display_name) {
  auto first = first_name_of(display_name);
  if (!first) return {};
  return infer(*first);
}

ClientStats GenderClient::stats() const { return {remote_calls_.load(), remote_failures_.load(), cache_hits_.load()}; }

ToxicityClient::ToxicityClient(ClientConfig config, std::shared_ptr<HttpTransport> transport)
    : config_(effective(std::move(config))), transport_(std::move(transport)), cache_(config_.cache_capacity) {
  config_.validate("toxicity");
  if (config_.mode == ClientMode::remote && !transport_) transport_ = make_default_transport();
}

std::optional<double> ToxicityClient::query_remote(const std::string& text) {
  ++remote_calls_;
  Json req;
  req["text"] = text;
  auto resp = transport_->post_json(*config_.endpoint, {{"key", *config_.api_key}}, dump_line(req), config_.timeout);
  if (!resp || resp->status != 200) return std::nullopt;
  const auto body = Json::parse(resp->body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) return std::nullopt;
  const auto tox = body.find("toxicity");
  if (tox == body.end() || !tox->is_number()) return std::nullopt;
  const double v = tox->get<double>();
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) return std::nullopt;
  return v;
}

ToxicityScore ToxicityClient::score(std::string_view text) {
  const std::string key(text);
  if (auto hit = cache_.get(key)) {
    ++cache_hits_;
    return *hit;
  }
  ToxicityScore result{offline_toxicity(text), ToxicityProvider::offline_lexicon};
  if (config_.mode == ClientMode::remote) {
    if (auto remote = query_remote(key)) {
      result = {*remote, ToxicityProvider::remote_api};
    } else {
      ++remote_failures_;
      spdlog::warn("toxicity endpoint unavailable, using offline lexicon");
    }
  }
  cache_.put(key, result);
  return result;
}

ClientStats ToxicityClient::stats() const { return {remote_calls_.load(), remote_failures_.load(), cache_hits_.load()}; }

}  // namespace modkit
