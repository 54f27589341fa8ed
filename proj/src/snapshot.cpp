#include <cstring>
#include <fstream>
#include <sstream>

#include "modkit/codec.hpp"
#include "modkit/error.hpp"
#include "modkit/store.hpp"

namespace modkit {

namespace {

constexpr char kMagic[4] = {'M', 'O', 'D', 'K'};
constexpr std::uint32_t kHeaderLength = 4 + 4 + 8 + 8;

[[noreturn]] void corrupt(const std::string& detail) { throw Error(ErrorCode::CorruptSnapshot, detail); }

template <typename T>
void put_le(std::string& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out += static_cast<char>((value >> (8 * i)) & 0xFF);
}

template <typename T>
T get_le(std::string_view in, std::size_t offset) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    value |= static_cast<T>(static_cast<unsigned char>(in[offset + i])) << (8 * i);
  }
  return value;
}

void section(std::string& body, const char* name, std::size_t count) {
  Json marker;
  marker["section"] = name;
  marker["count"] = count;
  body += dump_line(marker);
  body += '\n';
}

void line(std::string& body, const Json& j) {
  body += dump_line(j);
  body += '\n';
}

class SectionReader {
 public:
  explicit SectionReader(std::string_view body) : body_(body) {}

  std::vector<Json> read(const char* name) {
    const Json marker = next();
    if (!marker.is_object() || marker.value("section", "") != name || !marker.contains("count") ||
        !marker["count"].is_number_unsigned()) {
      corrupt(std::string("expected section '") + name + "'");
    }
    const auto count = marker["count"].get<std::size_t>();
    std::vector<Json> records;
    records.reserve(count);
    for (std::size_t i = 0; i < count; ++i) records.push_back(next());
    return records;
  }

  bool at_end() const { return pos_ >= body_.size(); }

 private:
  Json next() {
    if (at_end()) corrupt("truncated body");
    const auto nl = body_.find('\n', pos_);
    const auto end = nl == std::string_view::npos ? body_.size() : nl;
    const auto text = body_.substr(pos_, end - pos_);
    pos_ = end + 1;
    Json j = Json::parse(text.begin(), text.end(), nullptr, false);
    if (j.is_discarded()) corrupt("unparsable record in body");
    return j;
  }

  std::string_view body_;
  std::size_t pos_ = 0;
};

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string encode_snapshot(const StoreSnapshot& snap) {
  std::string body;
  section(body, "events", snap.events.size());
  for (const auto& e : snap.events) {
    Json j;
    j["event"] = event_to_json(e.event);
    j["toxicity"] = to_json(e.toxicity);
    j["target_ids"] = e.target_ids;
    line(body, j);
  }
  section(body, "profiles", snap.profiles.size());
  for (const auto& p : snap.profiles) line(body, profile_to_json(p));
  section(body, "prompts", snap.prompts.size());
  for (const auto& p : snap.prompts) line(body, to_json(p));
  section(body, "decisions", snap.decisions.size());
  for (const auto& d : snap.decisions) line(body, to_json(d));
  section(body, "actions", snap.actions.size());
  for (const auto& a : snap.actions) line(body, to_json(a));

  std::string out;
  put_le<std::uint32_t>(out, kHeaderLength);
  out.append(kMagic, sizeof kMagic);
  put_le<std::uint32_t>(out, snap.schema_version);
  put_le<std::uint64_t>(out, fnv1a64(body));
  put_le<std::uint64_t>(out, body.size());
  out += body;
  return out;
}

StoreSnapshot decode_snapshot(std::string_view bytes) {
  if (bytes.size() < 4 + kHeaderLength) corrupt("file too short for header (" + std::to_string(bytes.size()) + " bytes)");
  const auto header_length = get_le<std::uint32_t>(bytes, 0);
  if (header_length != kHeaderLength) corrupt("unexpected header length " + std::to_string(header_length));
  if (std::memcmp(bytes.data() + 4, kMagic, sizeof kMagic) != 0) corrupt("bad magic");
  const auto version = get_le<std::uint32_t>(bytes, 8);
  if (version != kSchemaVersion) {
    corrupt("schema_version " + std::to_string(version) + " unsupported (expected " + std::to_string(kSchemaVersion) + ")");
  }
  const auto checksum = get_le<std::uint64_t>(bytes, 12);
  const auto body_length = get_le<std::uint64_t>(bytes, 20);
  const auto body = bytes.substr(4 + kHeaderLength);
  if (body.size() != body_length) corrupt("body length mismatch");
  if (fnv1a64(body) != checksum) corrupt("checksum mismatch");

  StoreSnapshot snap;
  snap.schema_version = version;
  SectionReader reader(body);
  try {
    for (const auto& j : reader.read("events")) {
      StoredEvent e;
      e.event = event_from_json(j.at("event"));
      e.toxicity = toxicity_from_json(j.at("toxicity"));
      e.target_ids = j.at("target_ids").get<std::vector<std::string>>();
      snap.events.push_back(std::move(e));
    }
    for (const auto& j : reader.read("profiles")) snap.profiles.push_back(profile_from_json(j));
    for (const auto& j : reader.read("prompts")) snap.prompts.push_back(prompt_from_json(j));
    for (const auto& j : reader.read("decisions")) snap.decisions.push_back(decision_from_json(j));
    for (const auto& j : reader.read("actions")) snap.actions.push_back(action_from_json(j));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CorruptSnapshot) throw;
    corrupt(e.detail());
  } catch (const nlohmann::json::exception& e) {
    corrupt(e.what());
  }
  if (!reader.at_end()) corrupt("trailing data after last section");
  return snap;
}

void save_snapshot(const StoreSnapshot& snapshot, const std::filesystem::path& path) {
  const auto bytes = encode_snapshot(snapshot);
  const auto tmp = std::filesystem::path(path).concat(".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::SourceUnavailable, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::SourceUnavailable, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

StoreSnapshot load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::SourceUnavailable, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return decode_snapshot(buf.str());
}

}  // namespace modkit
