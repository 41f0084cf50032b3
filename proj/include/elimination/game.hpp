#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "elimination/corpus.hpp"

namespace elim {

struct GeneratedLevel;

/// A move the rules do not allow; the state it was applied to is unchanged.
class RuleViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Seconds allotted to challenge n (1..10): 30 / (1 + (n - 1) / 5).
double challenge_time(int challenge_number);
double challenge_budget_ms(int challenge_number);

/// Word length, doubled when the 2X letter is kept.
int word_score(std::string_view word, bool covers_bonus);

enum class ChallengeStatus { InProgress, Solved, TimedOut };

/// What a session needs to know about a challenge: its letters and the
/// optional 2X position.
struct PlayableChallenge {
  std::string word;
  std::optional<std::size_t> bonus_position;
};

std::vector<PlayableChallenge> playable_challenges(const GeneratedLevel& level);

class ChallengeState {
 public:
  ChallengeState(std::string challenge_word, int challenge_number,
                 std::optional<std::size_t> bonus_position = std::nullopt);

  /// Removes the letter at `original_index`. Auto-solves when what remains
  /// is a dictionary word of at least the minimum length.
  void eliminate(std::size_t original_index, const Dictionary& dictionary);

  /// Adds elapsed time; the challenge times out once elapsed >= budget.
  void advance_clock(std::int64_t ms);

  const std::string& original() const { return original_; }
  std::string remaining() const;
  bool is_eliminated(std::size_t original_index) const { return eliminated_.at(original_index); }
  std::vector<std::size_t> eliminated_positions() const;
  std::optional<std::size_t> bonus_position() const { return bonus_; }
  bool bonus_kept() const { return bonus_ && !eliminated_[*bonus_]; }

  int challenge_number() const { return number_; }
  double budget_ms() const { return budget_ms_; }
  std::int64_t elapsed_ms() const { return elapsed_ms_; }
  ChallengeStatus status() const { return status_; }
  const std::string& solved_word() const { return solved_word_; }
  int score() const { return score_; }

  /// No letters left to form a word; only the timer can end it.
  bool stuck(const Dictionary& dictionary) const;

 private:
  std::string original_;
  std::vector<bool> eliminated_;
  std::size_t remaining_count_;
  std::optional<std::size_t> bonus_;
  int number_;
  double budget_ms_;
  std::int64_t elapsed_ms_ = 0;
  ChallengeStatus status_ = ChallengeStatus::InProgress;
  std::string solved_word_;
  int score_ = 0;
};

/// Functional form of ChallengeState::eliminate.
ChallengeState apply_elimination(ChallengeState state, std::size_t original_index, const Dictionary& dictionary);

struct EliminateEvent {
  std::size_t original_index;
};
struct TickEvent {
  std::int64_t ms;
};
using SessionEvent = std::variant<EliminateEvent, TickEvent>;

enum class SessionOutcome { Running, Completed, Expired };

/// One attempt at a level: challenges 1..10 in order, each with a fresh
/// budget. Ends after the 10th solve or at the first timeout.
class LevelSession {
 public:
  LevelSession(std::size_t level_index, std::vector<PlayableChallenge> challenges);
  LevelSession(const GeneratedLevel& level);

  void apply(const SessionEvent& event, const Dictionary& dictionary);

  std::size_t level_index() const { return level_index_; }
  bool ended() const { return outcome_ != SessionOutcome::Running; }
  SessionOutcome outcome() const { return outcome_; }
  /// Challenge number (1-based) the session expired on.
  std::optional<int> expired_at() const { return expired_at_; }
  int total_score() const { return total_score_; }

  /// The challenge in play, or the last one once the session has ended.
  const ChallengeState& current() const { return states_.back(); }
  const std::vector<ChallengeState>& states() const { return states_; }
  std::size_t challenge_count() const { return challenges_.size(); }

 private:
  std::size_t level_index_;
  std::vector<PlayableChallenge> challenges_;
  std::vector<ChallengeState> states_;
  SessionOutcome outcome_ = SessionOutcome::Running;
  std::optional<int> expired_at_;
  int total_score_ = 0;
};

/// Functional form of LevelSession::apply.
LevelSession advance_session(LevelSession session, const SessionEvent& event, const Dictionary& dictionary);

/// Levels open to the player. Any finished session unlocks the next level.
class Progression {
 public:
  explicit Progression(std::size_t level_count) : level_count_(level_count) {}
  void record(const LevelSession& session);
  bool unlocked(std::size_t level_index) const { return level_index >= 1 && level_index <= highest_; }
  std::size_t highest_unlocked() const { return highest_; }

 private:
  std::size_t level_count_;
  std::size_t highest_ = 1;
};

/// A terminal position of the elimination graph: the kept letters (bit i =
/// original index i) form a dictionary word.
struct ReachableTerminal {
  std::string word;
  std::uint32_t kept_mask = 0;
};

struct ReachabilityReport {
  std::vector<std::string> reachable;            // sorted
  std::vector<std::string> unreachable_embedded;  // sorted
  std::vector<ReachableTerminal> terminals;       // every reachable terminal mask

  bool is_reachable(std::string_view word) const;
  /// Some reachable terminal spelling `word` keeps `position`.
  bool can_keep(std::string_view word, std::size_t position) const;
};

/// Explores every elimination sequence. A state that spells a dictionary word
/// absorbs (the game auto-solves there), so some embedded words can never be
/// finished on.
ReachabilityReport reachable_words(std::string_view challenge_word, const Dictionary& dictionary);

/// Removal order from the full word to `target_mask` that never passes
/// through an auto-solving state. Throws RuleViolation if none exists.
std::vector<std::size_t> elimination_path(std::string_view challenge_word, std::uint32_t target_mask,
                                          const Dictionary& dictionary);

/// Best score obtainable on one challenge given reachability and the bonus.
int max_challenge_score(const PlayableChallenge& challenge, const Dictionary& dictionary);

}  // namespace elim
