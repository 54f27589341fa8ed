#include <algorithm>
#include <fstream>

#include <spdlog/spdlog.h>

#include "modkit/error.hpp"
#include "modkit/service.hpp"

namespace modkit {

namespace {

DecisionScriptEntry parse_script_line(const std::string& line) {
  const Json j = Json::parse(line, nullptr, false);
  auto bad = [](const std::string& d) -> DecisionScriptEntry { throw Error(ErrorCode::MalformedRecord, d); };
  if (j.is_discarded() || !j.is_object()) return bad("decision entry is not a JSON object");
  const auto sel = j.find("prompt_selector");
  if (sel == j.end() || !sel->is_object()) return bad("missing prompt_selector");
  const auto pair = sel->find("pair");
  if (pair == sel->end() || !pair->is_array() || pair->size() != 2 || !(*pair)[0].is_string() ||
      !(*pair)[1].is_string()) {
    return bad("prompt_selector.pair must be [originator, target]");
  }
  const auto kind = sel->find("kind");
  if (kind == sel->end() || !kind->is_string()) return bad("missing prompt_selector.kind");
  const auto k = indicator_kind_from_string(kind->get<std::string>());
  if (!k) return bad("unknown prompt kind");
  const auto decision = j.find("decision");
  if (decision == j.end() || !decision->is_string()) return bad("missing decision");
  const auto d = decision_from_string(decision->get<std::string>());
  if (!d) return bad("decision must be accept or dismiss");
  const auto after = j.find("after_event_id");
  if (after == j.end() || !after->is_string()) return bad("missing after_event_id");
  return {{(*pair)[0].get<std::string>(), (*pair)[1].get<std::string>()}, *k, *d, after->get<std::string>()};
}

}  // namespace

std::vector<DecisionScriptEntry> read_decision_script(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SourceUnavailable, "cannot read decision script " + path.string());
  std::vector<DecisionScriptEntry> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      entries.push_back(parse_script_line(line));
    } catch (const Error& e) {
      spdlog::warn("{}:{}: skipping decision: {}", path.string(), lineno, e.detail());
    }
  }
  return entries;
}

ReplayResult replay(const std::filesystem::path& events_path, const std::filesystem::path& profiles_path,
                    const AppConfig& config, const ReplayOptions& options) {
  ReplayGateway gateway(options.capability);
  gateway.load_profiles(profiles_path);
  if (options.actions_out) gateway.set_action_log(*options.actions_out);
  GenderClient gender(config.gender_client, config.gender_confidence_min);
  ToxicityClient toxicity(config.toxicity_client);
  ModerationService service(config, gateway, gender, toxicity, TargetSelection::monitored);

  std::vector<DecisionScriptEntry> script;
  if (options.decisions_path) script = read_decision_script(*options.decisions_path);
  std::vector<bool> consumed(script.size(), false);

  const EventStream stream = gateway.stream_events(events_path);
  ReplayResult result;
  result.malformed = stream.malformed;
  for (const auto& event : stream.events) {
    const auto ingest = service.ingest(event);
    ++result.events;
    if (ingest.duplicate) ++result.duplicates;
    for (std::size_t i = 0; i < script.size(); ++i) {
      if (consumed[i] || script[i].after_event_id != event.event_id) continue;
      consumed[i] = true;
      std::optional<ModerationPrompt> target;
      for (const auto& p : service.pending_prompts(script[i].pair.target_id)) {
        const bool match = p.kind == script[i].kind &&
                           (p.pair == script[i].pair ||
                            (p.kind == IndicatorKind::volumetric && p.pair.target_id == script[i].pair.target_id));
        if (match) {
          target = p;
          break;
        }
      }
      if (!target) {
        ++result.decisions_unmatched;
        continue;
      }
      service.decide(target->prompt_id, script[i].decision);
      ++result.decisions_applied;
    }
  }
  result.decisions_unmatched += static_cast<std::size_t>(std::count(consumed.begin(), consumed.end(), false));

  service.decisions().expire(service.now());
  result.prompts = service.decisions().prompts();
  for (const auto& p : result.prompts) result.transcript.push_back(dump_line(to_json(p)));
  result.action_log = gateway.action_log();

  if (options.snapshot_out) save_snapshot(service.snapshot(), *options.snapshot_out);
  if (options.transcript_out) {
    std::ofstream out(*options.transcript_out, std::ios::trunc);
    if (!out) throw Error(ErrorCode::SourceUnavailable, "cannot write " + options.transcript_out->string());
    for (const auto& l : result.transcript) out << l << '\n';
  }
  return result;
}

}  // namespace modkit
