#pragma once

#include <memory>
#include <string>

#include "modkit/error.hpp"
#include "modkit/service.hpp"

namespace modkit {

// JSON-over-HTTP front end. Handlers only translate requests into
// ModerationService calls.
class ModerationServer {
 public:
  explicit ModerationServer(ModerationService& service);
  ~ModerationServer();

  ModerationServer(const ModerationServer&) = delete;
  ModerationServer& operator=(const ModerationServer&) = delete;

  // Binds and returns the bound port (port 0 picks one). Throws AddressInUse.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void run();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// HTTP status used for an error code.
int http_status_for(ErrorCode code);

}  // namespace modkit
