#include "modkit/server.hpp"

#include <algorithm>
#include <sstream>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "modkit/error.hpp"

namespace modkit {

int http_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownPrompt:
    case ErrorCode::UnknownProfile: return 404;
    case ErrorCode::AlreadyDecided: return 409;
    case ErrorCode::MalformedRecord:
    case ErrorCode::InvalidArgument:
    case ErrorCode::ConfigInvalid: return 400;
    case ErrorCode::RateLimited: return 429;
    case ErrorCode::CapabilityUnsupported:
    case ErrorCode::NotImplemented: return 501;
    default: return 500;
  }
}

namespace {

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(dump_line(body), "application/json");
}

void send_error(httplib::Response& res, ErrorCode code, const std::string& detail) {
  Json body;
  body["error"] = to_string(code);
  body["detail"] = detail;
  send_json(res, http_status_for(code), body);
}

long long int_param(const httplib::Request& req, const char* name, long long fallback) {
  if (!req.has_param(name)) return fallback;
  const std::string raw = req.get_param_value(name);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(raw, &used);
  } catch (...) {
    used = 0;
  }
  if (used != raw.size() || v <= 0) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be a positive integer");
  }
  return v;
}

}  // namespace

struct ModerationServer::Impl {
  explicit Impl(ModerationService& s) : service(s) { routes(); }

  template <typename Handler>
  auto guarded(Handler handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
      try {
        handler(req, res);
      } catch (const Error& e) {
        send_error(res, e.code(), e.detail());
      } catch (const std::exception& e) {
        send_error(res, ErrorCode::InvalidArgument, e.what());
      }
    };
  }

  void routes() {
    server.Get("/v1/health", guarded([](const httplib::Request&, httplib::Response& res) {
      Json body;
      body["status"] = "ok";
      body["schema_version"] = kSchemaVersion;
      send_json(res, 200, body);
    }));

    server.Post("/v1/ingest", guarded([this](const httplib::Request& req, httplib::Response& res) {
      std::istringstream in(req.body);
      auto batch = read_events(in, "ingest");
      std::stable_sort(batch.records.begin(), batch.records.end(), [](const auto& a, const auto& b) {
        if (a.created_at != b.created_at) return a.created_at < b.created_at;
        return a.event_id < b.event_id;
      });
      std::size_t accepted = 0;
      std::size_t duplicates = 0;
      Json created = Json::array();
      for (const auto& event : batch.records) {
        const auto result = service.ingest(event);
        if (result.duplicate) {
          ++duplicates;
          continue;
        }
        ++accepted;
        for (const auto& eval : result.evaluations) {
          for (const auto& p : eval.prompts) created.push_back(p.prompt_id);
        }
      }
      Json body;
      body["received"] = batch.records.size() + batch.malformed;
      body["accepted"] = accepted;
      body["duplicates"] = duplicates;
      body["malformed"] = batch.malformed;
      body["prompts_created"] = created;
      send_json(res, 200, body);
    }));

    server.Get("/v1/prompts", guarded([this](const httplib::Request& req, httplib::Response& res) {
      if (!req.has_param("user")) throw Error(ErrorCode::InvalidArgument, "user query parameter is required");
      const std::string user = req.get_param_value("user");
      const std::string status = req.has_param("status") ? req.get_param_value("status") : "pending";
      Json prompts = Json::array();
      if (status == "pending") {
        for (const auto& p : service.pending_prompts(user)) prompts.push_back(to_json(p));
      } else {
        const auto wanted = prompt_status_from_string(status);
        if (!wanted && status != "all") throw Error(ErrorCode::InvalidArgument, "unknown status " + status);
        service.decisions().expire(service.now());
        auto all = service.decisions().prompts();
        std::reverse(all.begin(), all.end());
        for (const auto& p : all) {
          if (p.pair.target_id == user && (!wanted || p.status == *wanted)) prompts.push_back(to_json(p));
        }
      }
      Json body;
      body["user"] = user;
      body["prompts"] = prompts;
      send_json(res, 200, body);
    }));

    server.Post("/v1/decisions", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const Json body = Json::parse(req.body, nullptr, false);
      if (body.is_discarded() || !body.is_object()) throw Error(ErrorCode::InvalidArgument, "body must be a JSON object");
      const auto id = body.find("prompt_id");
      const auto decision = body.find("decision");
      if (id == body.end() || !id->is_string()) throw Error(ErrorCode::InvalidArgument, "prompt_id is required");
      if (decision == body.end() || !decision->is_string()) throw Error(ErrorCode::InvalidArgument, "decision is required");
      const auto d = decision_from_string(decision->get<std::string>());
      if (!d) throw Error(ErrorCode::InvalidArgument, "decision must be accept or dismiss");
      const auto action = service.decide(id->get<std::string>(), *d);
      Json out;
      out["prompt"] = to_json(*service.decisions().prompt(id->get<std::string>()));
      out["action"] = action ? to_json(*action) : Json(nullptr);
      send_json(res, 200, out);
    }));

    server.Get(R"(/v1/pairs/([^/]+)/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const DirectedPairKey key{req.matches[1], req.matches[2]};
      const auto lookback_days = int_param(req, "lookback_days", service.config().indicators.lookback.count() / 86400);
      const Duration lookback = days(lookback_days);
      const Timestamp at = service.now();
      const auto& store = service.store();
      const auto forward = store.pair_history(key, lookback, at);
      const auto reverse = store.pair_history(key.reversed(), lookback, at);
      Json events = Json::array();
      auto add = [&](const PairHistory& h, const char* direction) {
        for (const auto& e : h.events) {
          Json j;
          j["event_id"] = e.event_id;
          j["created_at"] = format_rfc3339(e.created_at);
          j["toxicity"] = e.toxicity;
          j["direction"] = direction;
          events.push_back(j);
        }
      };
      add(forward, "forward");
      add(reverse, "reverse");
      std::stable_sort(events.begin(), events.end(), [](const Json& a, const Json& b) {
        return std::pair(a["created_at"].get<std::string>(), a["event_id"].get<std::string>()) <
               std::pair(b["created_at"].get<std::string>(), b["event_id"].get<std::string>());
      });
      const auto pct = store.directionality_pct(key, lookback, at);
      Json body;
      body["pair"] = to_json(key);
      body["lookback_days"] = lookback_days;
      body["forward_count"] = forward.events.size();
      body["reverse_count"] = reverse.events.size();
      body["directionality_pct"] = pct ? Json(*pct) : Json(nullptr);
      body["abusive_count"] = forward.abusive_count;
      body["events"] = events;
      send_json(res, 200, body);
    }));

    server.Get(R"(/v1/users/([^/]+)/indicators)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const std::string user = req.matches[1];
      const auto& ind = service.config().indicators;
      const auto window_hours = int_param(req, "window_hours", std::max<long long>(1, ind.volume_window.count() / 3600));
      const Duration window = hours(window_hours);
      const Timestamp at = service.now();
      const auto& store = service.store();
      const auto profile = store.profile(user);
      Json body;
      body["user_id"] = user;
      body["at"] = format_rfc3339(at);
      body["window_hours"] = window_hours;
      body["inbound_count"] = store.inbound_count(user, window, at);
      body["baseline"] = store.inbound_baseline(user, window, std::max(ind.baseline_trailing, window), at);
      body["info_score"] = profile ? Json(info_score(*profile)) : Json(nullptr);
      body["pending_prompts"] = service.pending_prompts(user).size();
      send_json(res, 200, body);
    }));

    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty() && res.status == 404) {
        Json body;
        body["error"] = "NotFound";
        body["detail"] = "no such endpoint";
        res.set_content(dump_line(body), "application/json");
      }
    });
  }

  ModerationService& service;
  httplib::Server server;
};

ModerationServer::ModerationServer(ModerationService& service) : impl_(std::make_unique<Impl>(service)) {}

ModerationServer::~ModerationServer() { stop(); }

int ModerationServer::bind(const std::string& host, int port) {
  // httplib's default adds SO_REUSEPORT, which lets a second instance share
  // the port silently.
  impl_->server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) throw Error(ErrorCode::AddressInUse, "cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void ModerationServer::run() { impl_->server.listen_after_bind(); }

void ModerationServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

bool ModerationServer::running() const { return impl_->server.is_running(); }

}  // namespace modkit
