#include <httplib.h>

#include "modkit/clients.hpp"

namespace modkit {

namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  const auto host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  const auto path_start = url.find('/', host_start);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

std::string with_query(const std::string& path, const std::multimap<std::string, std::string>& params) {
  if (params.empty()) return path;
  httplib::Params p(params.begin(), params.end());
  return path + (path.find('?') == std::string::npos ? "?" : "&") + httplib::detail::params_to_query_str(p);
}

class HttplibTransport final : public HttpTransport {
 public:
  std::optional<HttpResponse> get(const std::string& url, const std::multimap<std::string, std::string>& params,
                                  std::chrono::milliseconds timeout) override {
    const auto parts = split_url(url);
    httplib::Client client(parts.origin);
    configure(client, timeout);
    auto res = client.Get(with_query(parts.path, params));
    if (!res) return std::nullopt;
    return HttpResponse{res->status, res->body};
  }

  std::optional<HttpResponse> post_json(const std::string& url, const std::multimap<std::string, std::string>& params,
                                        const std::string& body, std::chrono::milliseconds timeout) override {
    const auto parts = split_url(url);
    httplib::Client client(parts.origin);
    configure(client, timeout);
    auto res = client.Post(with_query(parts.path, params), body, "application/json");
    if (!res) return std::nullopt;
    return HttpResponse{res->status, res->body};
  }

 private:
  static void configure(httplib::Client& client, std::chrono::milliseconds timeout) {
    const auto sec = static_cast<time_t>(timeout.count() / 1000);
    const auto usec = static_cast<time_t>((timeout.count() % 1000) * 1000);
    client.set_connection_timeout(sec, usec);
    client.set_read_timeout(sec, usec);
    client.set_write_timeout(sec, usec);
  }
};

}  // namespace

std::shared_ptr<HttpTransport> make_default_transport() { return std::make_shared<HttplibTransport>(); }

}  // namespace modkit
