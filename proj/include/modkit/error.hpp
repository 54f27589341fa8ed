#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace modkit {

enum class ErrorCode {
  MalformedRecord,
  RemoteUnavailable,
  CorruptSnapshot,
  UnknownProfile,
  UnknownPrompt,
  AlreadyDecided,
  SourceUnavailable,
  RateLimited,
  CapabilityUnsupported,
  NotImplemented,
  ConfigInvalid,
  AddressInUse,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every failure surfaced by modkit carries a stable code plus free-form detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

  // Only set for RateLimited.
  std::optional<std::chrono::seconds> retry_after;

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace modkit
