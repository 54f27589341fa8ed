#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace modkit {

// UTC, second precision.
using Timestamp = std::chrono::sys_seconds;
using Duration = std::chrono::seconds;

// Parses an RFC-3339 date-time ("2022-11-01T12:00:00Z", offsets and
// fractional seconds accepted). Offsets are normalized to UTC and fractions
// truncated. Returns nullopt on anything unparsable.
std::optional<Timestamp> parse_rfc3339(std::string_view text);

// Always "YYYY-MM-DDTHH:MM:SSZ".
std::string format_rfc3339(Timestamp ts);

constexpr Duration minutes(long long n) { return Duration{n * 60}; }
constexpr Duration hours(long long n) { return Duration{n * 3600}; }
constexpr Duration days(long long n) { return Duration{n * 86400}; }

}  // namespace modkit
