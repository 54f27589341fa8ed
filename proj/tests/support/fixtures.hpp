#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "modkit/clients.hpp"
#include "modkit/time.hpp"
#include "modkit/types.hpp"

namespace fixtures {

std::filesystem::path data_dir();
std::filesystem::path scenario_dir(const std::string& name);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

void write_file(const std::filesystem::path& path, const std::string& contents);
void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines);
std::string read_file(const std::filesystem::path& path);
std::vector<std::string> read_lines(const std::filesystem::path& path);

modkit::Timestamp ts(const std::string& rfc3339);

modkit::InteractionEvent event(const std::string& id, const std::string& author_id, const std::string& author_handle,
                               const std::string& text, modkit::Timestamp at);
modkit::UserProfile profile(const std::string& id, const std::string& handle, const std::string& display_name);
modkit::UserProfile rich_profile(const std::string& id, const std::string& handle, const std::string& display_name);

// Scripted transport: each call is answered by `responder`; calls are
// recorded.
class FakeTransport final : public modkit::HttpTransport {
 public:
  struct Call {
    std::string method;
    std::string url;
    std::multimap<std::string, std::string> params;
    std::string body;
  };
  using Responder = std::function<std::optional<modkit::HttpResponse>(const Call&)>;

  explicit FakeTransport(Responder responder) : responder_(std::move(responder)) {}

  std::optional<modkit::HttpResponse> get(const std::string& url, const std::multimap<std::string, std::string>& params,
                                          std::chrono::milliseconds timeout) override;
  std::optional<modkit::HttpResponse> post_json(const std::string& url,
                                                const std::multimap<std::string, std::string>& params,
                                                const std::string& body, std::chrono::milliseconds timeout) override;

  std::vector<Call> calls() const;

 private:
  Responder responder_;
  mutable std::mutex mutex_;
  std::vector<Call> calls_;
};

}  // namespace fixtures
