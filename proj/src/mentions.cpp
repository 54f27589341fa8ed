#include "modkit/mentions.hpp"

#include <algorithm>
#include <cstdint>

namespace modkit {

namespace {

bool is_handle_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

// Decodes one UTF-8 sequence at `pos`. Invalid input yields U+FFFD and
// consumes a single byte.
char32_t decode_utf8(std::string_view s, std::size_t& pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  auto cont = [&](std::size_t i) -> int {
    if (pos + i >= s.size()) return -1;
    const auto b = static_cast<unsigned char>(s[pos + i]);
    return (b & 0xC0) == 0x80 ? (b & 0x3F) : -1;
  };
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++pos;
    return 0xFFFD;
  }
  for (int i = 1; i < len; ++i) {
    const int c = cont(static_cast<std::size_t>(i));
    if (c < 0) {
      ++pos;
      return 0xFFFD;
    }
    cp = (cp << 6) | static_cast<char32_t>(c);
  }
  pos += static_cast<std::size_t>(len);
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool is_unicode_space(char32_t cp) {
  return cp == ' ' || (cp >= 0x09 && cp <= 0x0D) || cp == 0x85 || cp == 0xA0 || cp == 0x1680 ||
         (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028 || cp == 0x2029 || cp == 0x202F ||
         cp == 0x205F || cp == 0x3000;
}

// Alphabetic scripts a display name is likely to use. Symbols, emoji and
// punctuation blocks fall outside every range.
bool is_letter(char32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
  if (cp == 0xAA || cp == 0xB5 || cp == 0xBA) return true;
  if (cp >= 0xC0 && cp <= 0x24F) return cp != 0xD7 && cp != 0xF7;
  if (cp >= 0x370 && cp <= 0x3FF) return cp != 0x375 && cp != 0x37E && cp != 0x384 && cp != 0x385 && cp != 0x387;
  if (cp >= 0x400 && cp <= 0x52F) return !(cp >= 0x482 && cp <= 0x489);
  if (cp >= 0x5D0 && cp <= 0x5EA) return true;
  if (cp >= 0x620 && cp <= 0x64A) return true;
  if (cp >= 0x900 && cp <= 0x97F) return true;
  if (cp >= 0x1E00 && cp <= 0x1FFF) return true;
  if (cp >= 0x3040 && cp <= 0x30FF) return cp != 0x30FB;
  if (cp >= 0x4E00 && cp <= 0x9FFF) return true;
  if (cp >= 0xAC00 && cp <= 0xD7AF) return true;
  return false;
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  if (cp >= 0x391 && cp <= 0x3AB && cp != 0x3A2) return cp + 32;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 32;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 80;
  // Latin Extended-A alternates upper/lower on even/odd code points.
  if (cp >= 0x100 && cp <= 0x137 && (cp % 2 == 0)) return cp + 1;
  if (cp >= 0x14A && cp <= 0x177 && (cp % 2 == 0)) return cp + 1;
  return cp;
}

}  // namespace

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
  }
  return out;
}

bool iequals_ascii(std::string_view a, std::string_view b) {
  return a.size() == b.size() && lower_ascii(a) == lower_ascii(b);
}

bool is_valid_handle(std::string_view handle) {
  return !handle.empty() && handle.size() <= kMaxHandleLength &&
         std::all_of(handle.begin(), handle.end(), is_handle_char);
}

MentionScan scan_mentions(std::string_view text, std::string_view author_handle) {
  MentionScan scan;
  std::vector<std::string> seen;
  const std::string self = lower_ascii(author_handle);

  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '@') continue;
    if (i > 0 && is_handle_char(text[i - 1])) continue;
    std::size_t end = i + 1;
    while (end < text.size() && is_handle_char(text[end])) ++end;
    const std::size_t len = end - i - 1;
    if (len == 0 || len > kMaxHandleLength) {
      i = end - 1;
      continue;
    }
    std::string handle(text.substr(i + 1, len));
    std::string key = lower_ascii(handle);
    i = end - 1;
    if (key == self) continue;
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(std::move(key));
    if (scan.handles.size() < kMaxMentions) {
      scan.handles.push_back(std::move(handle));
    } else {
      ++scan.dropped;
    }
  }
  return scan;
}

std::vector<std::string> extract_mentions(std::string_view text, std::string_view author_handle) {
  return scan_mentions(text, author_handle).handles;
}

std::optional<std::string> first_name_of(std::string_view display_name) {
  std::size_t pos = 0;
  // Skip leading whitespace.
  while (pos < display_name.size()) {
    std::size_t next = pos;
    if (!is_unicode_space(decode_utf8(display_name, next))) break;
    pos = next;
  }
  std::string name;
  while (pos < display_name.size()) {
    const char32_t cp = decode_utf8(display_name, pos);
    if (is_unicode_space(cp)) break;
    if (is_letter(cp)) append_utf8(name, to_lower(cp));
  }
  if (name.empty()) return std::nullopt;
  return name;
}

std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (std::size_t pos = 0; pos < s.size(); ++n) decode_utf8(s, pos);
  return n;
}

}  // namespace modkit
