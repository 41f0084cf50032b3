#pragma once

// Small hand-built levels and dictionaries shared by several test binaries.

#include <string>
#include <vector>

#include "oracles.hpp"

#include "elimination/corpus.hpp"
#include "elimination/generation.hpp"
#include "elimination/schedule.hpp"
#include "elimination/trace.hpp"

namespace fixture {

inline const elim::Dictionary& mini_dictionary() {
  static const elim::Dictionary dict = elim::Dictionary::from_words(
      std::vector<std::string>{"hate", "hade", "ate", "tel", "hat", "let", "far", "fart", "afar"});
  return dict;
}

inline const elim::Dictionary& shipped_dictionary() {
  static const elim::Dictionary dict = [] {
    auto d = elim::Dictionary::load(oracle::data_file("words.txt"));
    d.load_profanity(oracle::data_file("profanity.txt"));
    return d;
  }();
  return dict;
}

/// Ten challenges alternating HATDEL and AFART; challenge 2 has its bonus on
/// the final T of AFART.
inline elim::GeneratedLevel mini_level(std::size_t index = 1) {
  elim::GeneratedLevel level;
  level.index = index;
  level.params = elim::default_schedule()[index - 1];
  level.seed = 1;
  for (std::size_t i = 0; i < elim::kChallengesPerLevel; ++i) {
    elim::GeneratedChallenge c;
    if (i % 2 == 0) {
      c.challenge_word = "HATDEL";
      c.sources = {{"HAT", {0, 1, 2}}, {"DEL", {3, 4, 5}}};
    } else {
      c.challenge_word = "AFART";
      c.sources = {{"AFAR", {0, 1, 2, 3}}, {"ART", {2, 3, 4}}};
    }
    if (i == 1) c.bonus_position = 4;
    c.fitness = 1.0;
    c.constraint = 1.0;
    level.challenges.push_back(c);
  }
  return level;
}

/// Builder for hand-written trace sessions.
struct SessionWriter {
  std::string session_id = "s1";
  std::string player_id = "p1";
  std::size_t level_index = 1;
  std::vector<elim::PlaytraceEvent> events;

  elim::PlaytraceEvent& add(elim::EventKind kind, std::size_t challenge, std::int64_t ts) {
    elim::PlaytraceEvent e;
    e.session_id = session_id;
    e.player_id = player_id;
    e.level_index = level_index;
    e.challenge_index = challenge;
    e.kind = kind;
    e.timestamp_ms = ts;
    events.push_back(e);
    return events.back();
  }
  void start(std::size_t c, std::int64_t ts) { add(elim::EventKind::Start, c, ts); }
  void eliminate(std::size_t c, std::size_t index, std::int64_t ts) {
    add(elim::EventKind::Eliminate, c, ts).original_index = index;
  }
  void solve(std::size_t c, const std::string& word, int score, std::int64_t ts) {
    auto& e = add(elim::EventKind::Solve, c, ts);
    e.word = word;
    e.score = score;
  }
  void timeout(std::size_t c, std::int64_t ts) { add(elim::EventKind::Timeout, c, ts); }

  /// Solves HATDEL (D then L, HATE for 4) or AFART (T, AFAR for 4) on challenge c.
  std::int64_t solve_mini(std::size_t c, std::int64_t ts) {
    start(c, ts);
    if (c % 2 == 1) {
      eliminate(c, 3, ts + 1000);
      eliminate(c, 5, ts + 2000);
      solve(c, "HATE", 4, ts + 2000);
    } else {
      eliminate(c, 4, ts + 1000);
      solve(c, "AFAR", 4, ts + 1000);
    }
    return ts + 3000;
  }
};

}  // namespace fixture
