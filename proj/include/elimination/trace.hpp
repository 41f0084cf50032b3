#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "elimination/corpus.hpp"
#include "elimination/game.hpp"
#include "elimination/generation.hpp"

namespace elim {

enum class EventKind { Start, Eliminate, Solve, Timeout };

const char* to_string(EventKind kind);
std::optional<EventKind> event_kind_from_string(std::string_view text);

/// One line of the append-only trace log.
struct PlaytraceEvent {
  std::string session_id;
  std::string player_id;
  std::size_t level_index = 0;
  std::size_t challenge_index = 0;  // 1..10
  EventKind kind = EventKind::Start;
  std::optional<std::size_t> original_index;  // Eliminate
  std::optional<std::string> word;            // Solve
  std::optional<int> score;                   // Solve
  std::int64_t timestamp_ms = 0;

  bool operator==(const PlaytraceEvent&) const = default;
};

class TraceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json event_to_json(const PlaytraceEvent& event);
/// Throws TraceError on a missing or mistyped field.
PlaytraceEvent event_from_json(const nlohmann::json& doc);

std::string serialize_event(const PlaytraceEvent& event);
void write_traces(std::ostream& out, const std::vector<PlaytraceEvent>& events);

struct TraceDiagnostic {
  std::size_t line = 0;  // 0 when the problem concerns a whole session
  std::string session_id;
  std::string message;
};

struct TraceParseResult {
  std::vector<PlaytraceEvent> events;
  std::vector<TraceDiagnostic> diagnostics;
  std::vector<std::string> excluded_sessions;
};

/// Parses newline-delimited trace records. Malformed lines are skipped with a
/// diagnostic; sessions that break ordering or Start/terminal structure are
/// excluded as a whole.
TraceParseResult parse_traces(std::istream& in);

/// Structural checks on one session's events (in log order). Returns the
/// problems found; empty means well-formed.
std::vector<std::string> check_session_structure(const std::vector<PlaytraceEvent>& events);

/// Groups events by session id, keeping each session's log order. Sessions
/// are listed by first appearance.
std::vector<std::pair<std::string, std::vector<PlaytraceEvent>>> group_sessions(
    const std::vector<PlaytraceEvent>& events);

enum class ReplayOutcome { Completed, Expired, Abandoned };

struct SessionReplay {
  std::string session_id;
  std::string player_id;
  std::size_t level_index = 0;
  ReplayOutcome outcome = ReplayOutcome::Abandoned;
  int total_score = 0;
  /// Solved word per challenge, in challenge order.
  std::vector<std::pair<std::size_t, std::string>> solved;
};

/// Re-runs a session through the rules engine. Every Solve must be the
/// engine's own auto-solve with the same score, and every Timeout must fall
/// at or after the challenge budget. Throws TraceError otherwise.
SessionReplay replay_session(const std::vector<PlaytraceEvent>& events, const GeneratedLevel& level,
                             const Dictionary& dictionary);

}  // namespace elim
