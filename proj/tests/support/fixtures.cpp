#include "support/fixtures.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "modkit/mentions.hpp"

namespace fixtures {

std::filesystem::path data_dir() { return MODKIT_DATA_DIR; }

std::filesystem::path scenario_dir(const std::string& name) { return data_dir() / "scenarios" / name; }

TempDir::TempDir() {
  std::random_device rd;
  const auto base = std::filesystem::temp_directory_path();
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto candidate = base / ("modkit-test-" + std::to_string(rd()));
    if (std::filesystem::create_directory(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create temp dir");
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << contents;
}

void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  for (const auto& l : lines) out << l << '\n';
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

modkit::Timestamp ts(const std::string& rfc3339) {
  auto t = modkit::parse_rfc3339(rfc3339);
  if (!t) throw std::invalid_argument("bad timestamp " + rfc3339);
  return *t;
}

modkit::InteractionEvent event(const std::string& id, const std::string& author_id, const std::string& author_handle,
                               const std::string& text, modkit::Timestamp at) {
  modkit::InteractionEvent e;
  e.event_id = id;
  e.author_id = author_id;
  e.author_handle = author_handle;
  e.text = text;
  e.created_at = at;
  e.mentions = modkit::extract_mentions(text, author_handle);
  return e;
}

modkit::UserProfile profile(const std::string& id, const std::string& handle, const std::string& display_name) {
  modkit::UserProfile p;
  p.user_id = id;
  p.handle = handle;
  p.display_name = display_name;
  p.created_at = ts("2015-01-01T00:00:00Z");
  return p;
}

modkit::UserProfile rich_profile(const std::string& id, const std::string& handle, const std::string& display_name) {
  auto p = profile(id, handle, display_name);
  p.bio = std::string(160, 'x');
  p.urls = {"https://a.example", "https://b.example", "https://c.example"};
  p.has_image = true;
  p.location = "Leeds";
  return p;
}

std::optional<modkit::HttpResponse> FakeTransport::get(const std::string& url,
                                                       const std::multimap<std::string, std::string>& params,
                                                       std::chrono::milliseconds) {
  Call call{"GET", url, params, {}};
  {
    std::lock_guard lock(mutex_);
    calls_.push_back(call);
  }
  return responder_(call);
}

std::optional<modkit::HttpResponse> FakeTransport::post_json(const std::string& url,
                                                             const std::multimap<std::string, std::string>& params,
                                                             const std::string& body, std::chrono::milliseconds) {
  Call call{"POST", url, params, body};
  {
    std::lock_guard lock(mutex_);
    calls_.push_back(call);
  }
  return responder_(call);
}

std::vector<FakeTransport::Call> FakeTransport::calls() const {
  std::lock_guard lock(mutex_);
  return calls_;
}

}  // namespace fixtures
