#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "modkit/codec.hpp"
#include "modkit/error.hpp"
#include "support/fixtures.hpp"

using namespace modkit;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Codec, MinimalEvent) {
  const auto e = parse_event(
      R"({"event_id":"1","author_id":"a","author_handle":"alice","text":"hi @bob","created_at":"2022-01-01T00:00:00Z"})");
  EXPECT_EQ(e.mentions, std::vector<std::string>{"bob"});
  EXPECT_EQ(e.created_at, fixtures::ts("2022-01-01T00:00:00Z"));
  EXPECT_FALSE(e.reply_to_event_id);
  EXPECT_FALSE(e.lang);
}

TEST(Codec, MissingCreatedAtIsMalformed) {
  EXPECT_EQ(code_of([] {
              parse_event(R"({"event_id":"1","author_id":"a","author_handle":"alice","text":"hi"})");
            }),
            ErrorCode::MalformedRecord);
}

TEST(Codec, BadInputsAreMalformed) {
  for (const char* line : {"", "{", "[]", "null",
                           R"({"event_id":1,"author_id":"a","author_handle":"alice","text":"x","created_at":"2022-01-01T00:00:00Z"})",
                           R"({"event_id":"1","author_id":"a","author_handle":"alice","text":"x","created_at":"yesterday"})",
                           R"({"event_id":"1","author_id":"a","author_handle":"alice","text":"x","created_at":"2022-13-01T00:00:00Z"})"}) {
    EXPECT_EQ(code_of([&] { parse_event(line); }), ErrorCode::MalformedRecord) << line;
  }
}

TEST(Codec, StoredMentionsAreIgnored) {
  const auto e = parse_event(
      R"({"event_id":"1","author_id":"a","author_handle":"@alice","text":"@carol","created_at":"2022-01-01T00:00:00Z","mentions":["zed"]})");
  EXPECT_EQ(e.author_handle, "alice");
  EXPECT_EQ(e.mentions, std::vector<std::string>{"carol"});
}

TEST(Codec, EventRoundTripProperty) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long long> secs(0, 2'000'000'000);
  for (int i = 0; i < 500; ++i) {
    InteractionEvent e = fixtures::event("ev" + std::to_string(i), "a" + std::to_string(i % 7), "h_" + std::to_string(i),
                                         "hello @x" + std::to_string(i % 13) + " \xC3\xA9 \"quoted\"\n",
                                         Timestamp(Duration(secs(rng))));
    if (i % 2 == 0) e.reply_to_event_id = "ev0";
    if (i % 3 == 0) e.lang = "en";
    EXPECT_EQ(parse_event(encode_event(e)), e);
  }
}

TEST(Codec, ProfileRoundTrip) {
  auto p = fixtures::rich_profile("u1", "emma", "Emma \xC3\x89lise");
  p.followers_count = 10;
  p.tweet_count = 99;
  EXPECT_EQ(parse_profile(encode_profile(p)), p);
  auto q = fixtures::profile("u2", "x", "X");
  EXPECT_EQ(parse_profile(encode_profile(q)), q);
}

TEST(Codec, ProfileDefaultsAndErrors) {
  const auto p = parse_profile(R"({"user_id":"u","handle":"h","display_name":"D","created_at":"2020-01-01T00:00:00Z"})");
  EXPECT_EQ(p.bio, "");
  EXPECT_TRUE(p.urls.empty());
  EXPECT_FALSE(p.has_image);
  EXPECT_EQ(code_of([] { parse_profile(R"({"user_id":"u","handle":"h","display_name":"D"})"); }),
            ErrorCode::MalformedRecord);
  EXPECT_EQ(code_of([] {
              parse_profile(
                  R"({"user_id":"u","handle":"h","display_name":"D","created_at":"2020-01-01T00:00:00Z","followers_count":-1})");
            }),
            ErrorCode::MalformedRecord);
}

TEST(Codec, ThousandRecordFileKeepsOrder) {
  std::ostringstream file;
  for (int i = 0; i < 1000; ++i) {
    file << encode_event(fixtures::event("e" + std::to_string(i), "a", "alice", "@bob " + std::to_string(i),
                                         fixtures::ts("2022-01-01T00:00:00Z") + Duration(1000 - i)))
         << '\n';
    if (i % 100 == 0) file << '\n';
  }
  std::istringstream in(file.str());
  const auto batch = read_events(in);
  ASSERT_EQ(batch.records.size(), 1000u);
  EXPECT_EQ(batch.malformed, 0u);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(batch.records[static_cast<std::size_t>(i)].event_id, "e" + std::to_string(i));
}

TEST(Codec, MalformedLinesAreSkippedAndCounted) {
  std::istringstream in(
      "{\"event_id\":\"1\",\"author_id\":\"a\",\"author_handle\":\"a\",\"text\":\"x\",\"created_at\":\"2022-01-01T00:00:00Z\"}\n"
      "{garbage\n"
      "\n"
      "{\"event_id\":\"2\",\"author_id\":\"a\",\"author_handle\":\"a\",\"text\":\"x\",\"created_at\":\"2022-01-01T00:00:01Z\"}\n");
  const auto batch = read_events(in);
  EXPECT_EQ(batch.records.size(), 2u);
  EXPECT_EQ(batch.malformed, 1u);
  EXPECT_EQ(batch.malformed_lines, std::vector<std::size_t>{2});
}

TEST(Codec, PromptDecisionActionRoundTrip) {
  ModerationPrompt p{"prm-000001", {"a", "b"}, "e1", IndicatorKind::volumetric, "m", ActionKind::delete_incoming,
                     fixtures::ts("2022-01-01T00:00:00Z"), PromptStatus::accepted};
  EXPECT_EQ(prompt_from_json(to_json(p)), p);
  UserDecision d{"prm-000001", Decision::accept, fixtures::ts("2022-01-02T00:00:00Z")};
  EXPECT_EQ(decision_from_json(to_json(d)), d);
  ActionRecord a{"act-000001", "prm-000001", ActionKind::delete_incoming,
                 {{"a", "b"}, fixtures::ts("2022-01-01T00:00:00Z"), fixtures::ts("2022-01-01T01:00:00Z")},
                 fixtures::ts("2022-01-01T00:30:00Z"), GatewayResult::simulated};
  EXPECT_EQ(action_from_json(to_json(a)), a);
  const auto line = Json::parse(encode_action_log_line(a));
  std::vector<std::string> keys;
  for (const auto& [k, v] : line.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"action_id", "kind", "subject", "issued_at", "result"}));
}

TEST(Time, Rfc3339) {
  EXPECT_EQ(fixtures::ts("2022-01-01T01:00:00+01:00"), fixtures::ts("2022-01-01T00:00:00Z"));
  EXPECT_EQ(fixtures::ts("2022-01-01T00:00:00.750Z"), fixtures::ts("2022-01-01T00:00:00Z"));
  EXPECT_EQ(format_rfc3339(fixtures::ts("2022-03-04T05:06:07-02:00")), "2022-03-04T07:06:07Z");
  for (const char* bad : {"2022-01-01", "2022-01-01 00:00:00Z", "2022-02-30T00:00:00Z", "2022-01-01T00:00:60Z", "x"}) {
    EXPECT_FALSE(parse_rfc3339(bad)) << bad;
  }
}
