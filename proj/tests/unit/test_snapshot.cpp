#include <random>

#include <gtest/gtest.h>

#include "modkit/error.hpp"
#include "modkit/store.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace modkit;

namespace {

const Timestamp T0 = fixtures::ts("2022-06-01T00:00:00Z");

std::string corrupt_detail(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CorruptSnapshot);
    return e.what();
  }
  ADD_FAILURE() << "no error";
  return {};
}

}  // namespace

TEST(Snapshot, ThousandEventRoundTrip) {
  std::mt19937_64 rng(5);
  const auto log = oracle::random_log(rng, 1000, 20, T0, days(30));
  InteractionStore store;
  for (const auto& p : log.profiles) store.upsert_profile(p);
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    store.append_event(log.records[i], {log.events[i].toxicity, ToxicityProvider::offline_lexicon});
  }
  fixtures::TempDir dir;
  auto snap = store.snapshot();
  snap.prompts.push_back({"prm-000001", {"u01", "u02"}, "e1", IndicatorKind::longitudinal, "m",
                          ActionKind::block_account, T0, PromptStatus::pending});
  save_snapshot(snap, dir / "s.modk");
  const auto loaded = load_snapshot(dir / "s.modk");
  EXPECT_EQ(loaded, snap);

  InteractionStore restored;
  restored.restore(loaded);
  EXPECT_EQ(restored.event_count(), store.event_count());
  std::uniform_int_distribution<std::size_t> who(0, 19);
  for (int k = 0; k < 50; ++k) {
    const DirectedPairKey key{log.users[who(rng)], log.users[who(rng)]};
    EXPECT_EQ(restored.pair_history(key, days(400), T0 + days(31)), store.pair_history(key, days(400), T0 + days(31)));
  }
}

TEST(Snapshot, EmptyFileIsCorrupt) {
  fixtures::TempDir dir;
  fixtures::write_file(dir / "empty.modk", "");
  corrupt_detail([&] { load_snapshot(dir / "empty.modk"); });
}

TEST(Snapshot, NewerSchemaIsCorruptWithVersionDetail) {
  std::string bytes = encode_snapshot({});
  // schema_version sits after the header length and magic.
  bytes[8] = static_cast<char>(kSchemaVersion + 1);
  const auto detail = corrupt_detail([&] { decode_snapshot(bytes); });
  EXPECT_NE(detail.find("schema_version 2"), std::string::npos) << detail;
}

TEST(Snapshot, DamageIsDetected) {
  InteractionStore store;
  store.upsert_profile(fixtures::profile("a", "alice", "Alice"));
  store.append_event(fixtures::event("e", "a", "alice", "@bob", T0), {0.2, ToxicityProvider::offline_lexicon});
  const std::string good = encode_snapshot(store.snapshot());
  EXPECT_EQ(decode_snapshot(good), store.snapshot());

  std::string flipped = good;
  flipped.back() ^= 0x01;
  corrupt_detail([&] { decode_snapshot(flipped); });
  corrupt_detail([&] { decode_snapshot(good.substr(0, good.size() - 3)); });
  corrupt_detail([&] { decode_snapshot(good + "x"); });
  std::string magic = good;
  magic[4] = 'X';
  corrupt_detail([&] { decode_snapshot(magic); });
}

TEST(Snapshot, MissingFileIsCorrupt) {
  fixtures::TempDir dir;
  EXPECT_THROW(load_snapshot(dir / "nope.modk"), Error);
}

TEST(Snapshot, Fnv1a64KnownValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}
