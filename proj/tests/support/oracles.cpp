#include "support/oracles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>
#include <set>

namespace oracle {

namespace {

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool word_byte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (u < 0x80 && std::isalnum(u)) || c == '_';
}

}  // namespace

std::vector<std::string> mentions(const std::string& text, const std::string& author) {
  static const std::regex re("@([A-Za-z0-9_]+)");
  std::vector<std::string> out;
  std::set<std::string> seen;
  const std::string self = lower(author);
  for (auto it = std::sregex_iterator(text.begin(), text.end(), re); it != std::sregex_iterator(); ++it) {
    const auto pos = static_cast<std::size_t>(it->position(0));
    if (pos > 0 && word_byte(text[pos - 1])) continue;
    const std::string handle = (*it)[1].str();
    if (handle.size() > 15) continue;
    const std::string key = lower(handle);
    if (key == self || !seen.insert(key).second) continue;
    if (out.size() < 5) out.push_back(handle);
  }
  return out;
}

std::string random_fuzz_text(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {
      "@", "@", "@", "a", "B", "z", "Q", "0", "7", "_", " ", " ", ".", ",", "!", "?", "-", "#", "\n", "\t",
      "me", "bob", "Bob", "BOB", "alice", "carol", "x_y", "@@", "\xC3\xA9", "\xF0\x9F\x92\x80", "\xE2\x80\x99",
      "abcdefghijklmnop", "123456789012345", "https://t.co/x", "mail@host.com"};
  std::uniform_int_distribution<std::size_t> len(0, 40);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::string s;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) s += pieces[pick(rng)];
  return s;
}

RandomLog random_log(std::mt19937_64& rng, std::size_t n_events, std::size_t n_users, modkit::Timestamp start,
                     modkit::Duration span) {
  RandomLog log;
  for (std::size_t i = 0; i < n_users; ++i) {
    const std::string num = (i < 10 ? "0" : "") + std::to_string(i);
    log.users.push_back("u" + num);
    modkit::UserProfile p;
    p.user_id = "u" + num;
    p.handle = "h" + num;
    p.display_name = "User " + num;
    log.profiles.push_back(p);
  }
  std::uniform_int_distribution<std::size_t> who(0, n_users - 1);
  std::uniform_int_distribution<int> howmany(0, 3);
  std::uniform_int_distribution<long long> when(0, span.count());
  std::uniform_real_distribution<double> tox(0.0, 1.0);
  for (std::size_t i = 0; i < n_events; ++i) {
    LogEvent e;
    e.id = "e" + std::to_string(i);
    const std::size_t a = who(rng);
    e.author = log.users[a];
    e.at = start + modkit::Duration(when(rng));
    e.toxicity = std::round(tox(rng) * 100.0) / 100.0;
    std::string text = "msg";
    const int k = howmany(rng);
    for (int j = 0; j < k; ++j) {
      const std::size_t t = who(rng);
      // Mixed case on purpose; resolution is case-insensitive.
      text += (j % 2 == 0 ? " @h" : " @H") + log.users[t].substr(1);
      if (t != a && std::find(e.targets.begin(), e.targets.end(), log.users[t]) == e.targets.end()) {
        e.targets.push_back(log.users[t]);
      }
    }
    modkit::InteractionEvent rec;
    rec.event_id = e.id;
    rec.author_id = e.author;
    rec.author_handle = log.profiles[a].handle;
    rec.text = text;
    rec.created_at = e.at;
    rec.mentions = mentions(text, rec.author_handle);
    log.records.push_back(rec);
    log.events.push_back(std::move(e));
  }
  return log;
}

namespace {

bool within(modkit::Timestamp t, modkit::Timestamp from_exclusive, modkit::Timestamp to_inclusive) {
  return t > from_exclusive && t <= to_inclusive;
}

bool mentions_target(const LogEvent& e, const std::string& t) {
  return std::find(e.targets.begin(), e.targets.end(), t) != e.targets.end();
}

}  // namespace

std::size_t pair_count(const RandomLog& log, const std::string& o, const std::string& t, modkit::Duration lookback,
                       modkit::Timestamp at) {
  std::size_t n = 0;
  for (const auto& e : log.events) {
    if (e.author == o && mentions_target(e, t) && within(e.at, at - lookback, at)) ++n;
  }
  return n;
}

std::size_t abusive_count(const RandomLog& log, const std::string& o, const std::string& t, modkit::Duration lookback,
                          modkit::Timestamp at, double threshold) {
  std::size_t n = 0;
  for (const auto& e : log.events) {
    if (e.author == o && mentions_target(e, t) && within(e.at, at - lookback, at) && e.toxicity >= threshold) ++n;
  }
  return n;
}

std::size_t inbound(const RandomLog& log, const std::string& t, modkit::Timestamp from_exclusive,
                    modkit::Timestamp to_inclusive) {
  std::size_t n = 0;
  for (const auto& e : log.events) {
    if (mentions_target(e, t) && within(e.at, from_exclusive, to_inclusive)) ++n;
  }
  return n;
}

double baseline(const RandomLog& log, const std::string& t, modkit::Duration window, modkit::Duration trailing,
                modkit::Timestamp at) {
  const long long k = trailing / window;
  if (k <= 0) return 0.0;
  std::size_t sum = 0;
  for (long long i = 1; i <= k; ++i) sum += inbound(log, t, at - (i + 1) * window, at - i * window);
  return static_cast<double>(sum) / static_cast<double>(k);
}

std::optional<double> directionality(const RandomLog& log, const std::string& o, const std::string& t,
                                     modkit::Duration lookback, modkit::Timestamp at) {
  const std::size_t fwd = pair_count(log, o, t, lookback, at);
  const std::size_t rev = pair_count(log, t, o, lookback, at);
  if (fwd + rev == 0) return std::nullopt;
  return 100.0 * static_cast<double>(fwd) / static_cast<double>(fwd + rev);
}

}  // namespace oracle
