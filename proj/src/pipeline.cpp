#include <fstream>
#include <set>

#include <spdlog/spdlog.h>

#include "modkit/error.hpp"
#include "modkit/mentions.hpp"
#include "modkit/service.hpp"

namespace modkit {

PipelineSummary run_pipeline(const std::filesystem::path& events_path, const std::filesystem::path& profiles_path,
                             const std::filesystem::path& out_path, const AppConfig& config,
                             const std::optional<std::filesystem::path>& snapshot_out) {
  ReplayGateway gateway;
  gateway.load_profiles(profiles_path);
  GenderClient gender(config.gender_client, config.gender_confidence_min);
  ToxicityClient toxicity(config.toxicity_client);
  ModerationService service(config, gateway, gender, toxicity, TargetSelection::all_targets);

  const EventStream stream = gateway.stream_events(events_path);
  std::ofstream out(out_path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::SourceUnavailable, "cannot write " + out_path.string());

  PipelineSummary summary;
  summary.read = stream.events.size();
  summary.malformed = stream.malformed;
  std::set<std::string> users;
  std::set<std::string> labelled;

  for (const auto& event : stream.events) {
    summary.mentions_dropped += scan_mentions(event.text, event.author_handle).dropped;
    const IngestResult result = service.ingest(event);
    for (const auto& eval : result.evaluations) {
      for (const auto* id : {&eval.pair.originator_id, &eval.pair.target_id}) {
        users.insert(*id);
      }
      if (eval.originator_gender.source != GenderSource::unresolved) labelled.insert(eval.pair.originator_id);
      if (eval.target_gender.source != GenderSource::unresolved) labelled.insert(eval.pair.target_id);
      if (!eval.in_scope) {
        ++summary.out_of_scope;
        continue;
      }
      Json rec;
      rec["event_id"] = event.event_id;
      rec["created_at"] = format_rfc3339(event.created_at);
      rec["originator_id"] = eval.pair.originator_id;
      rec["target_id"] = eval.pair.target_id;
      rec["target_position"] = eval.position;
      rec["text"] = event.text;
      rec["originator_gender"] = to_json(eval.originator_gender);
      rec["target_gender"] = to_json(eval.target_gender);
      rec["indicators"] = to_json(*eval.report);
      out << dump_line(rec) << '\n';
      ++summary.emitted;
    }
  }
  summary.users_total = users.size();
  summary.users_labelled = labelled.size();
  if (snapshot_out) save_snapshot(service.snapshot(), *snapshot_out);
  if (summary.emitted == 0) {
    spdlog::error("pipeline emitted no records (read {}, malformed {}, out of scope {})", summary.read,
                  summary.malformed, summary.out_of_scope);
  }
  return summary;
}

}  // namespace modkit
