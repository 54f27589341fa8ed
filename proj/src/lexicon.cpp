#include "modkit/clients.hpp"

#include <algorithm>
#include <array>

namespace modkit {

namespace {

// Profanity and gendered insults in the spirit of common swear-word lists.
constexpr std::array<std::string_view, 72> kLexicon{{
    "asshole", "assholes", "bastard", "bastards", "bimbo", "bitch", "bitches", "bitchy",
    "bollocks", "bullshit", "cow", "cunt", "cunts", "damn", "dick", "dickhead", "dicks",
    "disgusting", "dumb", "dumbass", "feminazi", "fuck", "fucked", "fucker", "fuckers",
    "fucking", "fugly", "hag", "harlot", "hoe", "hoes", "idiot", "idiots", "imbecile",
    "jackass", "loser", "losers", "moron", "morons", "motherfucker", "pathetic", "piss",
    "pissed", "prick", "pussy", "retard", "retarded", "scum", "scumbag", "shit", "shithead",
    "shits", "shitty", "skank", "skanks", "slag", "slut", "sluts", "slutty", "stfu", "stupid",
    "thot", "thots", "tramp", "twat", "twats", "ugly", "wanker", "wankers", "whore", "whores",
    "worthless",
}};

}  // namespace

std::span<const std::string_view> offline_lexicon() {
  static_assert(std::is_sorted(kLexicon.begin(), kLexicon.end()));
  return kLexicon;
}

bool in_offline_lexicon(std::string_view lowercase_token) {
  return std::binary_search(kLexicon.begin(), kLexicon.end(), lowercase_token);
}

}  // namespace modkit
