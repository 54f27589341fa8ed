#pragma once

#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "modkit/lru_cache.hpp"
#include "modkit/types.hpp"

namespace modkit {

enum class ClientMode { offline, remote };

struct ClientConfig {
  ClientMode mode = ClientMode::offline;
  std::optional<std::string> endpoint;
  std::optional<std::string> api_key;
  std::chrono::milliseconds timeout{2000};
  std::size_t cache_capacity = 4096;

  // Throws ConfigInvalid when remote mode lacks an endpoint or key.
  void validate(std::string_view name) const;
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

// Minimal HTTP surface the remote clients need. Implementations return
// nullopt on connection failure or timeout.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual std::optional<HttpResponse> get(const std::string& url,
                                          const std::multimap<std::string, std::string>& params,
                                          std::chrono::milliseconds timeout) = 0;
  virtual std::optional<HttpResponse> post_json(const std::string& url,
                                                const std::multimap<std::string, std::string>& params,
                                                const std::string& body,
                                                std::chrono::milliseconds timeout) = 0;
};

// Backed by cpp-httplib; accepts http:// and https:// (when built with TLS)
// endpoint URLs.
std::shared_ptr<HttpTransport> make_default_transport();

struct NameEntry {
  std::string_view name;
  Gender gender;
  double confidence;
};

// Bundled first-name table, sorted by name.
std::span<const NameEntry> offline_name_table();
std::optional<NameEntry> lookup_offline_name(std::string_view first_name);

// Bundled profanity/insult lexicon, lowercase, sorted.
std::span<const std::string_view> offline_lexicon();
bool in_offline_lexicon(std::string_view lowercase_token);

// Lowercased word tokens: whitespace-split, surrounding punctuation trimmed.
std::vector<std::string> toxicity_tokens(std::string_view text);
double offline_toxicity(std::string_view text);

inline constexpr double kDefaultGenderConfidenceMin = 0.60;

struct ClientStats {
  std::size_t remote_calls = 0;
  std::size_t remote_failures = 0;
  std::size_t cache_hits = 0;
};

class GenderClient {
 public:
  explicit GenderClient(ClientConfig config, double confidence_min = kDefaultGenderConfidenceMin,
                        std::shared_ptr<HttpTransport> transport = nullptr);

  GenderLabel infer(std::string_view first_name);
  // Convenience: first_name_of + infer; unresolved when no first name.
  GenderLabel infer_from_display_name(std::string_view display_name);

  ClientStats stats() const;
  double confidence_min() const noexcept { return confidence_min_; }

 private:
  std::optional<GenderLabel> query_remote(const std::string& name);
  GenderLabel from_offline(const std::string& name) const;
  GenderLabel apply_threshold(Gender g, double confidence, GenderSource source) const;

  ClientConfig config_;
  double confidence_min_;
  std::shared_ptr<HttpTransport> transport_;
  LruCache<std::string, GenderLabel> cache_;
  std::atomic<std::size_t> remote_calls_{0};
  std::atomic<std::size_t> remote_failures_{0};
  std::atomic<std::size_t> cache_hits_{0};
};

class ToxicityClient {
 public:
  explicit ToxicityClient(ClientConfig config, std::shared_ptr<HttpTransport> transport = nullptr);

  ToxicityScore score(std::string_view text);
  ClientStats stats() const;

 private:
  std::optional<double> query_remote(const std::string& text);

  ClientConfig config_;
  std::shared_ptr<HttpTransport> transport_;
  LruCache<std::string, ToxicityScore> cache_;
  std::atomic<std::size_t> remote_calls_{0};
  std::atomic<std::size_t> remote_failures_{0};
  std::atomic<std::size_t> cache_hits_{0};
};

}  // namespace modkit
