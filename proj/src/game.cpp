#include "elimination/game.hpp"

#include <algorithm>

#include "elimination/generation.hpp"

namespace elim {

double challenge_time(int challenge_number) {
  if (challenge_number < 1 || challenge_number > static_cast<int>(kChallengesPerLevel)) {
    throw std::domain_error("challenge number must be within 1..10, got " + std::to_string(challenge_number));
  }
  return 30.0 / (1.0 + (challenge_number - 1) / 5.0);
}

double challenge_budget_ms(int challenge_number) { return challenge_time(challenge_number) * 1000.0; }

int word_score(std::string_view word, bool covers_bonus) {
  const int base = static_cast<int>(word.size());
  return covers_bonus ? 2 * base : base;
}

std::vector<PlayableChallenge> playable_challenges(const GeneratedLevel& level) {
  std::vector<PlayableChallenge> out;
  for (const auto& c : level.challenges) out.push_back({c.challenge_word, c.bonus_position});
  return out;
}

ChallengeState::ChallengeState(std::string challenge_word, int challenge_number,
                               std::optional<std::size_t> bonus_position)
    : original_(std::move(challenge_word)),
      eliminated_(original_.size(), false),
      remaining_count_(original_.size()),
      bonus_(bonus_position),
      number_(challenge_number),
      budget_ms_(challenge_budget_ms(challenge_number)) {
  if (bonus_ && *bonus_ >= original_.size()) throw std::invalid_argument("bonus position outside challenge word");
}

std::string ChallengeState::remaining() const {
  std::string out;
  out.reserve(remaining_count_);
  for (std::size_t i = 0; i < original_.size(); ++i) {
    if (!eliminated_[i]) out.push_back(original_[i]);
  }
  return out;
}

std::vector<std::size_t> ChallengeState::eliminated_positions() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < eliminated_.size(); ++i) {
    if (eliminated_[i]) out.push_back(i);
  }
  return out;
}

void ChallengeState::eliminate(std::size_t original_index, const Dictionary& dictionary) {
  if (status_ != ChallengeStatus::InProgress) throw RuleViolation("challenge is no longer in progress");
  if (static_cast<double>(elapsed_ms_) >= budget_ms_) throw RuleViolation("challenge time budget exhausted");
  if (original_index >= original_.size()) {
    throw RuleViolation("position " + std::to_string(original_index) + " is outside the challenge word");
  }
  if (eliminated_[original_index]) {
    throw RuleViolation("position " + std::to_string(original_index) + " was already eliminated");
  }
  eliminated_[original_index] = true;
  --remaining_count_;

  if (remaining_count_ >= dictionary.min_word_length()) {
    std::string word = remaining();
    if (dictionary.contains(word)) {
      score_ = word_score(word, bonus_kept());
      solved_word_ = std::move(word);
      status_ = ChallengeStatus::Solved;
    }
  }
}

void ChallengeState::advance_clock(std::int64_t ms) {
  if (ms < 0) throw RuleViolation("clock cannot run backwards");
  if (status_ != ChallengeStatus::InProgress) return;
  elapsed_ms_ += ms;
  if (static_cast<double>(elapsed_ms_) >= budget_ms_) status_ = ChallengeStatus::TimedOut;
}

bool ChallengeState::stuck(const Dictionary& dictionary) const {
  return status_ == ChallengeStatus::InProgress && remaining_count_ <= dictionary.min_word_length();
}

ChallengeState apply_elimination(ChallengeState state, std::size_t original_index, const Dictionary& dictionary) {
  state.eliminate(original_index, dictionary);
  return state;
}

LevelSession::LevelSession(std::size_t level_index, std::vector<PlayableChallenge> challenges)
    : level_index_(level_index), challenges_(std::move(challenges)) {
  if (challenges_.empty()) throw std::invalid_argument("a level needs at least one challenge");
  states_.emplace_back(challenges_[0].word, 1, challenges_[0].bonus_position);
}

LevelSession::LevelSession(const GeneratedLevel& level) : LevelSession(level.index, playable_challenges(level)) {}

void LevelSession::apply(const SessionEvent& event, const Dictionary& dictionary) {
  if (ended()) throw RuleViolation("session has already ended");
  ChallengeState& state = states_.back();
  if (const auto* tick = std::get_if<TickEvent>(&event)) {
    state.advance_clock(tick->ms);
  } else {
    state.eliminate(std::get<EliminateEvent>(event).original_index, dictionary);
  }

  if (state.status() == ChallengeStatus::TimedOut) {
    outcome_ = SessionOutcome::Expired;
    expired_at_ = state.challenge_number();
  } else if (state.status() == ChallengeStatus::Solved) {
    total_score_ += state.score();
    const std::size_t next = states_.size();
    if (next == challenges_.size()) {
      outcome_ = SessionOutcome::Completed;
    } else {
      states_.emplace_back(challenges_[next].word, static_cast<int>(next + 1), challenges_[next].bonus_position);
    }
  }
}

LevelSession advance_session(LevelSession session, const SessionEvent& event, const Dictionary& dictionary) {
  session.apply(event, dictionary);
  return session;
}

void Progression::record(const LevelSession& session) {
  if (!session.ended()) return;
  highest_ = std::max(highest_, std::min(session.level_index() + 1, level_count_));
}

}  // namespace elim
