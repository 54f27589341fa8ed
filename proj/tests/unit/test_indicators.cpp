#include <random>

#include <gtest/gtest.h>

#include "modkit/indicators.hpp"
#include "support/fixtures.hpp"

using namespace modkit;
using fixtures::event;

namespace {

const Timestamp T0 = fixtures::ts("2022-06-01T00:00:00Z");

UserProfile scored(double bio_fraction, int urls, bool image, bool location) {
  auto p = fixtures::profile("x", "x", "X");
  p.bio = std::string(static_cast<std::size_t>(bio_fraction * 160), 'b');
  for (int i = 0; i < urls; ++i) p.urls.push_back("https://u" + std::to_string(i));
  p.has_image = image;
  if (location) p.location = "here";
  return p;
}

ToxicityScore tox(double v) { return {v, ToxicityProvider::offline_lexicon}; }

void add(InteractionStore& store, const std::string& id, const std::string& author, const std::string& handle,
         const std::string& text, Timestamp at, double toxicity = 0.0) {
  store.append_event(event(id, author, handle, text, at), tox(toxicity));
}

void seed_users(InteractionStore& store) {
  store.upsert_profile(fixtures::rich_profile("o", "orig", "Oliver"));
  store.upsert_profile(fixtures::rich_profile("t", "targ", "Tina"));
}

}  // namespace

TEST(InfoScore, Examples) {
  EXPECT_DOUBLE_EQ(info_score(scored(0, 0, false, false)), 0.0);
  EXPECT_DOUBLE_EQ(info_score(scored(1, 3, true, true)), 1.0);
  EXPECT_DOUBLE_EQ(info_score(scored(0.5, 1, true, false)), 0.5 * 0.5 + 0.3 / 3 + 0.1);
  EXPECT_NEAR(info_score(scored(0.5, 1, true, false)), 0.45, 1e-12);
  EXPECT_DOUBLE_EQ(info_score(scored(1, 9, true, true)), 1.0);
}

TEST(InfoScore, BioCountsCodePoints) {
  auto p = fixtures::profile("x", "x", "X");
  for (int i = 0; i < 80; ++i) p.bio += "\xC3\xA9";
  EXPECT_DOUBLE_EQ(info_score(p), 0.25);
}

TEST(Informational, Shares) {
  const IndicatorConfig cfg;
  auto r = informational_asymmetry(scored(0, 0, false, false), scored(0, 0, false, false), cfg);
  EXPECT_DOUBLE_EQ(*r.target_share_pct, 50.0);
  EXPECT_FALSE(r.triggered);

  // s_o = 0.1 (image only), s_t = 0.9 (bio + urls + image)
  r = informational_asymmetry(scored(0, 0, true, false), scored(1, 3, true, false), cfg);
  EXPECT_NEAR(*r.originator_info_score, 0.1, 1e-12);
  EXPECT_NEAR(*r.target_info_score, 0.9, 1e-12);
  EXPECT_NEAR(*r.target_share_pct, 90.0, 1e-9);
  EXPECT_TRUE(r.triggered);

  r = informational_asymmetry(scored(1, 3, false, false), scored(1, 3, false, false), cfg);
  EXPECT_DOUBLE_EQ(*r.target_share_pct, 50.0);
  EXPECT_FALSE(r.triggered);
}

TEST(Informational, LoweringLowInfoThresholdNeverAddsTriggers) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> frac(0, 1);
  std::uniform_int_distribution<int> urls(0, 3);
  std::bernoulli_distribution coin;
  for (int i = 0; i < 500; ++i) {
    const auto o = scored(frac(rng), urls(rng), coin(rng), coin(rng));
    const auto t = scored(frac(rng), urls(rng), coin(rng), coin(rng));
    IndicatorConfig hi;
    hi.low_info_threshold = 0.5;
    IndicatorConfig lo = hi;
    lo.low_info_threshold = 0.1;
    if (informational_asymmetry(o, t, lo).triggered) EXPECT_TRUE(informational_asymmetry(o, t, hi).triggered);
    IndicatorConfig strict = hi;
    strict.share_trigger_pct = 90;
    if (informational_asymmetry(o, t, strict).triggered) EXPECT_TRUE(informational_asymmetry(o, t, hi).triggered);
  }
}

TEST(Volumetric, Directionality) {
  InteractionStore store;
  seed_users(store);
  for (int i = 0; i < 3; ++i) add(store, "f" + std::to_string(i), "o", "orig", "@targ", T0 - days(i + 1));
  add(store, "r", "t", "targ", "@orig", T0 - days(2));
  auto r = volumetric_asymmetry({"o", "t"}, store, {}, T0);
  EXPECT_DOUBLE_EQ(*r.directionality_pct, 75.0);
  EXPECT_EQ(r.pair_events, 4u);
  EXPECT_FALSE(r.triggered);
}

TEST(Volumetric, SymmetricConversationDoesNotTrigger) {
  InteractionStore store;
  seed_users(store);
  for (int i = 0; i < 5; ++i) {
    add(store, "f" + std::to_string(i), "o", "orig", "@targ", T0 - days(i + 1));
    add(store, "r" + std::to_string(i), "t", "targ", "@orig", T0 - days(i + 1) + minutes(1));
  }
  const auto r = volumetric_asymmetry({"o", "t"}, store, {}, T0);
  EXPECT_DOUBLE_EQ(*r.directionality_pct, 50.0);
  EXPECT_FALSE(r.triggered);
}

TEST(Volumetric, DirectionClauseNeedsEnoughPairEvents) {
  InteractionStore store;
  seed_users(store);
  for (int i = 0; i < 9; ++i) add(store, "f" + std::to_string(i), "o", "orig", "@targ", T0 - days(i + 1));
  EXPECT_FALSE(volumetric_asymmetry({"o", "t"}, store, {}, T0).triggered);
  add(store, "f9", "o", "orig", "@targ", T0 - days(20));
  const auto r = volumetric_asymmetry({"o", "t"}, store, {}, T0);
  EXPECT_DOUBLE_EQ(*r.directionality_pct, 100.0);
  EXPECT_TRUE(r.triggered);
}

TEST(Volumetric, VolumeAgainstBaseline) {
  InteractionStore store;
  seed_users(store);
  for (int i = 0; i < 30; ++i) {
    store.upsert_profile(fixtures::profile("q" + std::to_string(i), "q" + std::to_string(i), "Q"));
    store.upsert_profile(fixtures::profile("p" + std::to_string(i), "p" + std::to_string(i), "P"));
  }
  // Two inbound in every trailing window, from accounts other than the ones
  // evaluated below.
  const IndicatorConfig cfg;
  const long long windows = cfg.baseline_trailing / cfg.volume_window;
  int n = 0;
  for (long long k = 1; k <= windows; ++k) {
    for (int i = 0; i < 2; ++i) {
      const auto who = "q" + std::to_string(n % 30);
      add(store, "b" + std::to_string(n++), who, who, "@targ", T0 - k * cfg.volume_window - minutes(5 + i * 10));
    }
  }
  for (int i = 0; i < 9; ++i) {
    const auto who = "p" + std::to_string(i);
    add(store, "c" + std::to_string(i), who, who, "@targ", T0 - minutes(i * 3));
  }
  auto r = volumetric_asymmetry({"p0", "t"}, store, cfg, T0);
  EXPECT_DOUBLE_EQ(r.baseline, 2.0);
  EXPECT_EQ(r.inbound_count, 9u);
  EXPECT_FALSE(r.triggered);
  for (int i = 9; i < 12; ++i) {
    const auto who = "p" + std::to_string(i);
    add(store, "c" + std::to_string(i), who, who, "@targ", T0 - minutes(i * 3));
  }
  r = volumetric_asymmetry({"p11", "t"}, store, cfg, T0);
  EXPECT_EQ(r.inbound_count, 12u);
  EXPECT_EQ(r.pair_events, 1u);
  EXPECT_TRUE(r.triggered);
}

TEST(Volumetric, RaisingThresholdsNeverAddsTriggers) {
  std::mt19937_64 rng(17);
  InteractionStore store;
  for (int i = 0; i < 6; ++i) store.upsert_profile(fixtures::profile("u" + std::to_string(i), "h" + std::to_string(i), "U"));
  std::uniform_int_distribution<int> who(0, 5);
  std::uniform_int_distribution<long long> when(0, days(3).count());
  for (int i = 0; i < 800; ++i) {
    const int a = who(rng);
    add(store, "e" + std::to_string(i), "u" + std::to_string(a), "h" + std::to_string(a),
        "@h" + std::to_string(who(rng)), T0 + Duration(when(rng)));
  }
  for (int q = 0; q < 300; ++q) {
    const DirectedPairKey key{"u" + std::to_string(who(rng)), "u" + std::to_string(who(rng))};
    const Timestamp at = T0 + Duration(when(rng));
    IndicatorConfig base;
    base.volume_abs_min = 3;
    base.volume_multiplier = 1.5;
    base.pair_events_min = 5;
    base.direction_trigger_pct = 40;
    IndicatorConfig stricter = base;
    stricter.volume_abs_min = 6;
    stricter.volume_multiplier = 3;
    stricter.pair_events_min = 10;
    stricter.direction_trigger_pct = 70;
    if (volumetric_asymmetry(key, store, stricter, at).triggered) {
      EXPECT_TRUE(volumetric_asymmetry(key, store, base, at).triggered);
    }
  }
}

TEST(Longitudinal, Cases) {
  InteractionStore store;
  seed_users(store);
  const IndicatorConfig cfg;
  EXPECT_EQ(longitudinal({"o", "t"}, store, cfg, T0, "now"), (LongitudinalReport{0, false}));

  for (int i = 0; i < 3; ++i) add(store, "x" + std::to_string(i), "o", "orig", "@targ", T0 - days(i + 1), 0.1);
  EXPECT_EQ(longitudinal({"o", "t"}, store, cfg, T0, "now"), (LongitudinalReport{0, false}));

  for (int i = 0; i < 3; ++i) add(store, "a" + std::to_string(i), "o", "orig", "@targ", T0 - days(i + 10), 0.7);
  EXPECT_EQ(longitudinal({"o", "t"}, store, cfg, T0, "now"), (LongitudinalReport{3, true}));
  // The current event never counts itself.
  add(store, "now", "o", "orig", "@targ", T0, 0.9);
  EXPECT_EQ(longitudinal({"o", "t"}, store, cfg, T0, "now").prior_abusive_count, 3u);
  // Reverse direction is not history of o->t abuse.
  add(store, "rev", "t", "targ", "@orig", T0 - days(1), 0.9);
  EXPECT_EQ(longitudinal({"o", "t"}, store, cfg, T0, "now").prior_abusive_count, 3u);
  // Outside the lookback.
  IndicatorConfig short_lb = cfg;
  short_lb.lookback = days(12);
  EXPECT_EQ(longitudinal({"o", "t"}, store, short_lb, T0, "now").prior_abusive_count, 2u);
}

TEST(Evaluate, BenignFirstContact) {
  InteractionStore store;
  seed_users(store);
  const auto e = event("e1", "o", "orig", "hello @targ, lovely talk", T0);
  store.append_event(e, tox(0));
  const auto r = evaluate(e, "t", store, tox(0), {});
  EXPECT_FALSE(r.longitudinal.triggered);
  EXPECT_FALSE(r.informational.triggered);
  EXPECT_FALSE(r.volumetric.triggered);
  EXPECT_FALSE(r.any_triggered());
}

TEST(Evaluate, MissingProfileLeavesInformationalAbsent) {
  InteractionStore store;
  store.upsert_profile(fixtures::rich_profile("t", "targ", "Tina"));
  const auto e = event("e1", "ghost", "ghost", "@targ", T0);
  store.append_event(e, tox(0));
  const auto r = evaluate(e, "t", store, tox(0), {});
  EXPECT_FALSE(r.informational.originator_info_score);
  EXPECT_FALSE(r.informational.triggered);
}

TEST(Evaluate, Deterministic) {
  InteractionStore store;
  seed_users(store);
  for (int i = 0; i < 20; ++i) add(store, "e" + std::to_string(i), "o", "orig", "@targ idiot", T0 - hours(i), 0.9);
  const auto e = event("e0", "o", "orig", "@targ idiot", T0);
  const auto a = evaluate(e, "t", store, tox(0.9), {});
  const auto b = evaluate(e, "t", store, tox(0.9), {});
  EXPECT_EQ(a, b);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}
