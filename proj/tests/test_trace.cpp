#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"

#include "elimination/trace.hpp"

using namespace elim;
using fixture::SessionWriter;

namespace {

SessionWriter completed_session() {
  SessionWriter w;
  std::int64_t ts = 1000;
  for (std::size_t c = 1; c <= 10; ++c) ts = w.solve_mini(c, ts);
  return w;
}

std::string to_text(const std::vector<PlaytraceEvent>& events) {
  std::ostringstream out;
  write_traces(out, events);
  return out.str();
}

}  // namespace

TEST_CASE("events serialize with fixed camelCase keys") {
  SessionWriter w;
  w.eliminate(1, 3, 1500);
  CHECK(serialize_event(w.events[0]) ==
        R"({"sessionId":"s1","playerId":"p1","levelIndex":1,"challengeIndex":1,"kind":"eliminate","originalIndex":3,"timestampMs":1500})");
  w.solve(1, "HATE", 4, 1600);
  CHECK(serialize_event(w.events[1]) ==
        R"({"sessionId":"s1","playerId":"p1","levelIndex":1,"challengeIndex":1,"kind":"solve","word":"HATE","score":4,"timestampMs":1600})");
}

TEST_CASE("events round trip through JSON") {
  const auto w = completed_session();
  for (const auto& e : w.events) CHECK(event_from_json(event_to_json(e)) == e);
  std::istringstream in(to_text(w.events));
  const auto parsed = parse_traces(in);
  CHECK(parsed.diagnostics.empty());
  CHECK(parsed.events == w.events);
}

TEST_CASE("malformed records are rejected") {
  CHECK_THROWS_AS(event_from_json(nlohmann::json::array()), TraceError);
  CHECK_THROWS_AS(event_from_json(nlohmann::json::parse(R"({"sessionId":"a"})")), TraceError);
  CHECK_THROWS_AS(
      event_from_json(nlohmann::json::parse(
          R"({"sessionId":"a","playerId":"p","levelIndex":1,"challengeIndex":1,"kind":"jump","timestampMs":0})")),
      TraceError);
  CHECK_THROWS_AS(
      event_from_json(nlohmann::json::parse(
          R"({"sessionId":"a","playerId":"p","levelIndex":1,"challengeIndex":11,"kind":"start","timestampMs":0})")),
      TraceError);
  CHECK_THROWS_AS(
      event_from_json(nlohmann::json::parse(
          R"({"sessionId":"a","playerId":"p","levelIndex":1,"challengeIndex":1,"kind":"eliminate","timestampMs":0})")),
      TraceError);
}

TEST_CASE("parser skips bad lines with line numbers") {
  const auto w = completed_session();
  std::string text = to_text(w.events);
  text = "not json\n\n" + text + "{\"sessionId\": 3}\n";
  std::istringstream in(text);
  const auto parsed = parse_traces(in);
  CHECK(parsed.events.size() == w.events.size());
  REQUIRE(parsed.diagnostics.size() == 2);
  CHECK(parsed.diagnostics[0].line == 1);
  CHECK(parsed.diagnostics[1].line == w.events.size() + 3);
}

TEST_CASE("parser excludes sessions with out-of-order timestamps") {
  auto good = completed_session();
  SessionWriter bad;
  bad.session_id = "bad";
  bad.start(1, 5000);
  bad.eliminate(1, 3, 4000);
  auto all = good.events;
  all.insert(all.end(), bad.events.begin(), bad.events.end());
  std::istringstream in(to_text(all));
  const auto parsed = parse_traces(in);
  CHECK(parsed.excluded_sessions == std::vector<std::string>{"bad"});
  CHECK(parsed.events == good.events);
  REQUIRE_FALSE(parsed.diagnostics.empty());
  CHECK(parsed.diagnostics[0].session_id == "bad");
}

TEST_CASE("structure checks") {
  SessionWriter w;
  w.eliminate(1, 3, 10);
  CHECK_FALSE(check_session_structure(w.events).empty());

  SessionWriter twice;
  twice.start(1, 0);
  twice.start(1, 5);
  CHECK_FALSE(check_session_structure(twice.events).empty());

  SessionWriter ended;
  ended.start(1, 0);
  ended.timeout(1, 30000);
  ended.timeout(1, 30001);
  CHECK_FALSE(check_session_structure(ended.events).empty());

  SessionWriter mixed;
  mixed.start(1, 0);
  mixed.level_index = 2;
  mixed.eliminate(1, 0, 5);
  CHECK_FALSE(check_session_structure(mixed.events).empty());

  CHECK(check_session_structure(completed_session().events).empty());
}

TEST_CASE("sessions group in first-appearance order") {
  SessionWriter a, b;
  a.session_id = "a";
  b.session_id = "b";
  b.start(1, 0);
  a.start(1, 1);
  b.eliminate(1, 3, 2);
  std::vector<PlaytraceEvent> all{b.events[0], a.events[0], b.events[1]};
  const auto groups = group_sessions(all);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].first == "b");
  CHECK(groups[0].second.size() == 2);
  CHECK(groups[1].first == "a");
}

TEST_CASE("a completed session replays to its score") {
  const auto level = fixture::mini_level();
  const auto replay = replay_session(completed_session().events, level, fixture::mini_dictionary());
  CHECK(replay.outcome == ReplayOutcome::Completed);
  CHECK(replay.total_score == 40);
  REQUIRE(replay.solved.size() == 10);
  CHECK(replay.solved[0] == std::pair<std::size_t, std::string>{1, "HATE"});
  CHECK(replay.solved[1] == std::pair<std::size_t, std::string>{2, "AFAR"});
}

TEST_CASE("a bonus solve replays doubled") {
  SessionWriter w;
  w.solve_mini(1, 0);
  w.start(2, 3000);
  w.eliminate(2, 0, 4000);
  w.solve(2, "FART", 8, 4000);
  const auto replay = replay_session(w.events, fixture::mini_level(), fixture::mini_dictionary());
  CHECK(replay.total_score == 12);
  CHECK(replay.outcome == ReplayOutcome::Abandoned);
}

TEST_CASE("timeouts and expiry") {
  SessionWriter w;
  w.solve_mini(1, 0);
  w.start(2, 3000);
  w.eliminate(2, 1, 10000);
  w.timeout(2, 3000 + 25000);
  const auto replay = replay_session(w.events, fixture::mini_level(), fixture::mini_dictionary());
  CHECK(replay.outcome == ReplayOutcome::Expired);
  CHECK(replay.total_score == 4);

  SessionWriter early;
  early.start(1, 0);
  early.timeout(1, 29999);
  CHECK_THROWS_AS(replay_session(early.events, fixture::mini_level(), fixture::mini_dictionary()), TraceError);

  SessionWriter late;
  late.start(1, 0);
  late.eliminate(1, 3, 30000);
  CHECK_THROWS_AS(replay_session(late.events, fixture::mini_level(), fixture::mini_dictionary()), TraceError);
}

TEST_CASE("impossible solves are rejected") {
  const auto level = fixture::mini_level();
  const auto& dict = fixture::mini_dictionary();

  SessionWriter wrong_word;
  wrong_word.start(1, 0);
  wrong_word.eliminate(1, 3, 100);
  wrong_word.eliminate(1, 5, 200);
  wrong_word.solve(1, "HADE", 4, 200);
  CHECK_THROWS_AS(replay_session(wrong_word.events, level, dict), TraceError);

  SessionWriter wrong_score;
  wrong_score.start(1, 0);
  wrong_score.eliminate(1, 3, 100);
  wrong_score.eliminate(1, 5, 200);
  wrong_score.solve(1, "HATE", 8, 200);
  CHECK_THROWS_AS(replay_session(wrong_score.events, level, dict), TraceError);

  SessionWriter unearned;
  unearned.start(1, 0);
  unearned.solve(1, "HATE", 4, 100);
  CHECK_THROWS_AS(replay_session(unearned.events, level, dict), TraceError);

  SessionWriter missing;
  missing.start(1, 0);
  missing.eliminate(1, 3, 100);
  missing.eliminate(1, 5, 200);
  CHECK_THROWS_AS(replay_session(missing.events, level, dict), TraceError);

  SessionWriter repeat;
  repeat.start(1, 0);
  repeat.eliminate(1, 3, 100);
  repeat.eliminate(1, 3, 200);
  CHECK_THROWS_AS(replay_session(repeat.events, level, dict), TraceError);

  SessionWriter skipped;
  skipped.start(2, 0);
  CHECK_THROWS_AS(replay_session(skipped.events, level, dict), TraceError);
}

TEST_CASE("a session that stops mid-challenge is abandoned") {
  SessionWriter w;
  w.solve_mini(1, 0);
  w.start(2, 3000);
  w.eliminate(2, 1, 3500);
  const auto replay = replay_session(w.events, fixture::mini_level(), fixture::mini_dictionary());
  CHECK(replay.outcome == ReplayOutcome::Abandoned);
  CHECK(replay.total_score == 4);
}
