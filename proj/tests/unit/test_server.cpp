#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "modkit/codec.hpp"
#include "modkit/config.hpp"
#include "modkit/error.hpp"
#include "modkit/server.hpp"
#include "modkit/service.hpp"
#include "support/fixtures.hpp"

using namespace modkit;

namespace {

class ServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto dir = fixtures::scenario_dir("persistent_abuser");
    config = load_config(dir / "config.json");
    gateway.load_profiles(dir / "profiles.jsonl");
    gender = std::make_unique<GenderClient>(config.gender_client, config.gender_confidence_min);
    toxicity = std::make_unique<ToxicityClient>(config.toxicity_client);
    service = std::make_unique<ModerationService>(config, gateway, *gender, *toxicity);
    server = std::make_unique<ModerationServer>(*service);
    port = server->bind("127.0.0.1", 0);
    thread = std::thread([this] { server->run(); });
    client = std::make_unique<httplib::Client>("127.0.0.1", port);
    for (int i = 0; i < 100 && !server->running(); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(10));
    events_body = fixtures::read_file(dir / "events.jsonl");
  }

  void TearDown() override {
    server->stop();
    thread.join();
  }

  Json get_json(const std::string& path, int expected_status = 200) {
    auto res = client->Get(path);
    EXPECT_TRUE(res) << path;
    if (!res) return {};
    EXPECT_EQ(res->status, expected_status) << path << " " << res->body;
    return Json::parse(res->body);
  }

  Json post_json(const std::string& path, const std::string& body, int expected_status = 200) {
    auto res = client->Post(path, body, "application/json");
    EXPECT_TRUE(res) << path;
    if (!res) return {};
    EXPECT_EQ(res->status, expected_status) << path << " " << res->body;
    return Json::parse(res->body);
  }

  AppConfig config;
  ReplayGateway gateway;
  std::unique_ptr<GenderClient> gender;
  std::unique_ptr<ToxicityClient> toxicity;
  std::unique_ptr<ModerationService> service;
  std::unique_ptr<ModerationServer> server;
  std::unique_ptr<httplib::Client> client;
  std::thread thread;
  int port = 0;
  std::string events_body;
};

}  // namespace

TEST_F(ServerTest, Health) {
  const auto j = get_json("/v1/health");
  EXPECT_EQ(j["status"], "ok");
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
}

TEST_F(ServerTest, IngestPromptsDecide) {
  auto j = post_json("/v1/ingest", events_body);
  EXPECT_EQ(j["accepted"], 200);
  EXPECT_EQ(j["malformed"], 0);
  ASSERT_EQ(j["prompts_created"].size(), 1u);

  j = post_json("/v1/ingest", events_body);
  EXPECT_EQ(j["accepted"], 0);
  EXPECT_EQ(j["duplicates"], 200);

  j = get_json("/v1/prompts?user=u_target");
  ASSERT_EQ(j["prompts"].size(), 1u);
  const auto prompt = j["prompts"][0];
  EXPECT_EQ(prompt["kind"], "longitudinal");
  EXPECT_EQ(prompt["message"], "This person has tweeted you 3 times before- would you like to block them?");

  Json decision;
  decision["prompt_id"] = prompt["prompt_id"];
  decision["decision"] = "accept";
  j = post_json("/v1/decisions", decision.dump());
  EXPECT_EQ(j["prompt"]["status"], "accepted");
  EXPECT_EQ(j["action"]["kind"], "block_account");
  EXPECT_EQ(j["action"]["result"], "simulated");

  j = post_json("/v1/decisions", decision.dump(), 409);
  EXPECT_EQ(j["error"], "AlreadyDecided");
  EXPECT_TRUE(get_json("/v1/prompts?user=u_target")["prompts"].empty());
  EXPECT_EQ(get_json("/v1/prompts?user=u_target&status=accepted")["prompts"].size(), 1u);
  EXPECT_EQ(get_json("/v1/prompts?user=u_target&status=all")["prompts"].size(), 1u);
}

TEST_F(ServerTest, UnknownPromptIs404) {
  const auto j = post_json("/v1/decisions", R"({"prompt_id":"prm-424242","decision":"accept"})", 404);
  EXPECT_EQ(j["error"], "UnknownPrompt");
}

TEST_F(ServerTest, BadRequests) {
  EXPECT_EQ(post_json("/v1/decisions", "{nope", 400)["error"], "InvalidArgument");
  post_json("/v1/decisions", R"({"prompt_id":"prm-000001","decision":"maybe"})", 400);
  get_json("/v1/prompts", 400);
  get_json("/v1/prompts?user=u&status=weird", 400);
  get_json("/v1/nothing", 404);
}

TEST_F(ServerTest, PairsMatchStore) {
  post_json("/v1/ingest", events_body);
  const auto j = get_json("/v1/pairs/u_abuser/u_target?lookback_days=365");
  const DirectedPairKey key{"u_abuser", "u_target"};
  const auto fwd = service->store().pair_history(key, days(365));
  const auto rev = service->store().pair_history(key.reversed(), days(365));
  EXPECT_EQ(j["forward_count"], fwd.events.size());
  EXPECT_EQ(j["reverse_count"], rev.events.size());
  EXPECT_EQ(j["abusive_count"], fwd.abusive_count);
  EXPECT_EQ(j["directionality_pct"].get<double>(), *service->store().directionality_pct(key, days(365), service->now()));
  EXPECT_EQ(j["events"].size(), fwd.events.size() + rev.events.size());
  const auto unseen = get_json("/v1/pairs/nobody/none");
  EXPECT_EQ(unseen["forward_count"], 0);
  EXPECT_TRUE(unseen["directionality_pct"].is_null());
}

TEST_F(ServerTest, UserIndicators) {
  post_json("/v1/ingest", events_body);
  const auto j = get_json("/v1/users/u_target/indicators?window_hours=24");
  EXPECT_EQ(j["inbound_count"], service->store().inbound_count("u_target", hours(24), service->now()));
  EXPECT_EQ(j["pending_prompts"], 1);
  EXPECT_TRUE(j["info_score"].is_number());
  get_json("/v1/users/u_target/indicators?window_hours=zero", 400);
}

TEST(ServerBind, PortInUse) {
  auto cfg = AppConfig{};
  cfg.monitored_targets = {"t"};
  ReplayGateway gateway;
  GenderClient gender({});
  ToxicityClient toxicity({});
  ModerationService service(cfg, gateway, gender, toxicity);
  ModerationServer first(service);
  const int port = first.bind("127.0.0.1", 0);
  ModerationServer second(service);
  try {
    second.bind("127.0.0.1", port);
    ADD_FAILURE() << "second bind succeeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AddressInUse);
  }
  EXPECT_EQ(http_status_for(ErrorCode::UnknownPrompt), 404);
  EXPECT_EQ(http_status_for(ErrorCode::RateLimited), 429);
}
