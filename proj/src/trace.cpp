#include "elimination/trace.hpp"

#include <set>
#include <unordered_map>

namespace elim {

using nlohmann::json;

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Start: return "start";
    case EventKind::Eliminate: return "eliminate";
    case EventKind::Solve: return "solve";
    case EventKind::Timeout: return "timeout";
  }
  return "unknown";
}

std::optional<EventKind> event_kind_from_string(std::string_view text) {
  if (text == "start") return EventKind::Start;
  if (text == "eliminate") return EventKind::Eliminate;
  if (text == "solve") return EventKind::Solve;
  if (text == "timeout") return EventKind::Timeout;
  return std::nullopt;
}

json event_to_json(const PlaytraceEvent& e) { return json::parse(serialize_event(e)); }

PlaytraceEvent event_from_json(const json& doc) {
  try {
    if (!doc.is_object()) throw TraceError("record is not an object");
    PlaytraceEvent e;
    e.session_id = doc.at("sessionId").get<std::string>();
    e.player_id = doc.at("playerId").get<std::string>();
    e.level_index = doc.at("levelIndex").get<std::size_t>();
    e.challenge_index = doc.at("challengeIndex").get<std::size_t>();
    const auto kind = event_kind_from_string(doc.at("kind").get<std::string>());
    if (!kind) throw TraceError("unknown event kind '" + doc.at("kind").get<std::string>() + "'");
    e.kind = *kind;
    e.timestamp_ms = doc.at("timestampMs").get<std::int64_t>();
    if (e.session_id.empty()) throw TraceError("empty sessionId");
    if (e.challenge_index < 1 || e.challenge_index > kChallengesPerLevel) throw TraceError("challengeIndex out of range");
    switch (e.kind) {
      case EventKind::Eliminate:
        e.original_index = doc.at("originalIndex").get<std::size_t>();
        break;
      case EventKind::Solve:
        e.word = doc.at("word").get<std::string>();
        e.score = doc.at("score").get<int>();
        break;
      default:
        break;
    }
    return e;
  } catch (const json::exception& ex) {
    throw TraceError(std::string("malformed record: ") + ex.what());
  }
}

std::string serialize_event(const PlaytraceEvent& e) {
  // Fixed key order keeps log lines byte-stable.
  nlohmann::ordered_json doc;
  doc["sessionId"] = e.session_id;
  doc["playerId"] = e.player_id;
  doc["levelIndex"] = e.level_index;
  doc["challengeIndex"] = e.challenge_index;
  doc["kind"] = to_string(e.kind);
  if (e.original_index) doc["originalIndex"] = *e.original_index;
  if (e.word) doc["word"] = *e.word;
  if (e.score) doc["score"] = *e.score;
  doc["timestampMs"] = e.timestamp_ms;
  return doc.dump();
}

void write_traces(std::ostream& out, const std::vector<PlaytraceEvent>& events) {
  for (const auto& e : events) out << serialize_event(e) << '\n';
}

std::vector<std::pair<std::string, std::vector<PlaytraceEvent>>> group_sessions(
    const std::vector<PlaytraceEvent>& events) {
  std::vector<std::pair<std::string, std::vector<PlaytraceEvent>>> sessions;
  std::unordered_map<std::string, std::size_t> slot;
  for (const auto& e : events) {
    auto [it, inserted] = slot.try_emplace(e.session_id, sessions.size());
    if (inserted) sessions.emplace_back(e.session_id, std::vector<PlaytraceEvent>{});
    sessions[it->second].second.push_back(e);
  }
  return sessions;
}

std::vector<std::string> check_session_structure(const std::vector<PlaytraceEvent>& events) {
  std::vector<std::string> problems;
  if (events.empty()) return problems;
  std::map<std::size_t, int> starts;
  std::map<std::size_t, int> terminals;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& e = events[i];
    if (i > 0 && e.timestamp_ms < events[i - 1].timestamp_ms) {
      problems.push_back("timestamp " + std::to_string(e.timestamp_ms) + " precedes " +
                         std::to_string(events[i - 1].timestamp_ms));
    }
    if (e.level_index != events.front().level_index) problems.push_back("session spans more than one level");
    if (e.player_id != events.front().player_id) problems.push_back("session spans more than one player");
    if (e.kind == EventKind::Start) {
      if (++starts[e.challenge_index] > 1) {
        problems.push_back("challenge " + std::to_string(e.challenge_index) + " started twice");
      }
    } else if (!starts.contains(e.challenge_index)) {
      problems.push_back("challenge " + std::to_string(e.challenge_index) + " has events before its start");
    }
    if (e.kind == EventKind::Solve || e.kind == EventKind::Timeout) {
      if (++terminals[e.challenge_index] > 1) {
        problems.push_back("challenge " + std::to_string(e.challenge_index) + " ended twice");
      }
    }
  }
  return problems;
}

TraceParseResult parse_traces(std::istream& in) {
  TraceParseResult result;
  std::vector<PlaytraceEvent> parsed;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      parsed.push_back(event_from_json(json::parse(line)));
    } catch (const json::exception& ex) {
      result.diagnostics.push_back({number, "", std::string("unparseable record: ") + ex.what()});
    } catch (const TraceError& ex) {
      result.diagnostics.push_back({number, "", ex.what()});
    }
  }

  std::set<std::string> excluded;
  for (const auto& [id, events] : group_sessions(parsed)) {
    const auto problems = check_session_structure(events);
    if (problems.empty()) continue;
    excluded.insert(id);
    result.excluded_sessions.push_back(id);
    for (const auto& p : problems) result.diagnostics.push_back({0, id, p});
  }
  for (auto& e : parsed) {
    if (!excluded.contains(e.session_id)) result.events.push_back(std::move(e));
  }
  return result;
}

}  // namespace elim
