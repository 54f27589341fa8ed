#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace modkit {

inline constexpr std::size_t kMaxMentions = 5;
inline constexpr std::size_t kMaxHandleLength = 15;

struct MentionScan {
  std::vector<std::string> handles;
  // Distinct, non-self mentions past the cap.
  std::size_t dropped = 0;
};

// A mention is '@' not preceded by [A-Za-z0-9_], followed by a maximal run of
// 1..15 [A-Za-z0-9_]. Case-insensitive duplicates keep the first spelling; the
// author's own handle is removed; at most kMaxMentions are kept.
MentionScan scan_mentions(std::string_view text, std::string_view author_handle);

std::vector<std::string> extract_mentions(std::string_view text,
                                          std::string_view author_handle);

bool is_valid_handle(std::string_view handle);

// ASCII lowercase; handles are ASCII by construction.
std::string lower_ascii(std::string_view s);
bool iequals_ascii(std::string_view a, std::string_view b);

// First whitespace-delimited token of a display name, reduced to its letters
// and lowercased. Absent when nothing remains.
std::optional<std::string> first_name_of(std::string_view display_name);

// Number of Unicode scalar values; invalid bytes count one each.
std::size_t utf8_length(std::string_view s);

}  // namespace modkit
