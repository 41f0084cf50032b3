#include "elimination/trace.hpp"

namespace elim {

namespace {

std::string where(const PlaytraceEvent& e) {
  return "session " + e.session_id + " challenge " + std::to_string(e.challenge_index) + " (" + to_string(e.kind) +
         " at " + std::to_string(e.timestamp_ms) + "): ";
}

}  // namespace

SessionReplay replay_session(const std::vector<PlaytraceEvent>& events, const GeneratedLevel& level,
                             const Dictionary& dictionary) {
  if (events.empty()) throw TraceError("empty session");
  if (const auto problems = check_session_structure(events); !problems.empty()) {
    throw TraceError("session " + events.front().session_id + ": " + problems.front());
  }

  SessionReplay replay;
  replay.session_id = events.front().session_id;
  replay.player_id = events.front().player_id;
  replay.level_index = level.index;

  LevelSession session(level);
  std::int64_t last_ts = 0;
  bool started = false;
  // Set when an elimination auto-solved; the next record must confirm it.
  std::optional<std::pair<std::size_t, std::string>> pending_solve;
  int pending_score = 0;

  for (const auto& e : events) {
    if (e.level_index != level.index) {
      throw TraceError(where(e) + "references level " + std::to_string(e.level_index) + ", replaying level " +
                       std::to_string(level.index));
    }
    if (pending_solve) {
      if (e.kind != EventKind::Solve || e.challenge_index != pending_solve->first) {
        throw TraceError(where(e) + "expected the solve of '" + pending_solve->second + "' first");
      }
      if (e.word != pending_solve->second || e.score != pending_score) {
        throw TraceError(where(e) + "recorded solve '" + e.word.value_or("") + "' for " +
                         std::to_string(e.score.value_or(0)) + " points, rules give '" + pending_solve->second +
                         "' for " + std::to_string(pending_score));
      }
      replay.solved.emplace_back(e.challenge_index, *e.word);
      pending_solve.reset();
      continue;
    }
    if (session.ended()) throw TraceError(where(e) + "event after the session ended");

    const auto current = static_cast<std::size_t>(session.current().challenge_number());
    if (e.challenge_index != current) {
      throw TraceError(where(e) + "challenge " + std::to_string(current) + " is in play");
    }
    switch (e.kind) {
      case EventKind::Start:
        if (started) throw TraceError(where(e) + "challenge already started");
        started = true;
        last_ts = e.timestamp_ms;
        break;
      case EventKind::Eliminate: {
        if (!started) throw TraceError(where(e) + "elimination before start");
        session.apply(TickEvent{e.timestamp_ms - last_ts}, dictionary);
        if (session.ended()) throw TraceError(where(e) + "elimination after the challenge budget ran out");
        try {
          session.apply(EliminateEvent{*e.original_index}, dictionary);
        } catch (const RuleViolation& violation) {
          throw TraceError(where(e) + violation.what());
        }
        last_ts = e.timestamp_ms;
        const ChallengeState& played = session.states()[current - 1];
        if (played.status() == ChallengeStatus::Solved) {
          pending_solve.emplace(current, played.solved_word());
          pending_score = played.score();
          started = false;
        }
        break;
      }
      case EventKind::Solve:
        throw TraceError(where(e) + "solve of '" + e.word.value_or("") + "' without a word on the board");
      case EventKind::Timeout:
        if (!started) throw TraceError(where(e) + "timeout before start");
        session.apply(TickEvent{e.timestamp_ms - last_ts}, dictionary);
        if (session.outcome() != SessionOutcome::Expired) {
          throw TraceError(where(e) + "timeout recorded before the " + std::to_string(session.current().budget_ms()) +
                           " ms budget elapsed");
        }
        break;
    }
  }
  if (pending_solve) throw TraceError("session " + replay.session_id + ": missing solve record at end of log");

  replay.total_score = session.total_score();
  switch (session.outcome()) {
    case SessionOutcome::Completed: replay.outcome = ReplayOutcome::Completed; break;
    case SessionOutcome::Expired: replay.outcome = ReplayOutcome::Expired; break;
    case SessionOutcome::Running: replay.outcome = ReplayOutcome::Abandoned; break;
  }
  return replay;
}

}  // namespace elim
