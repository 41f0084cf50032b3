#include "elimination/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace elim {

const char* to_string(BotKind kind) {
  switch (kind) {
    case BotKind::Random: return "random";
    case BotKind::GreedyLongest: return "greedy-longest";
    case BotKind::GreedyShortest: return "greedy-shortest";
    case BotKind::NoisySkill: return "noisy-skill";
    case BotKind::DeliberatelyNaive: return "naive";
  }
  return "unknown";
}

std::optional<BotKind> bot_kind_from_string(std::string_view text) {
  for (auto kind : {BotKind::Random, BotKind::GreedyLongest, BotKind::GreedyShortest, BotKind::NoisySkill,
                    BotKind::DeliberatelyNaive}) {
    if (text == to_string(kind)) return kind;
  }
  return std::nullopt;
}

void BotPolicy::validate() const {
  if (!(skill >= 0.0 && skill <= 1.0)) throw std::invalid_argument("bot skill must lie in [0, 1]");
  if (per_letter_delay_ms < 0) throw std::invalid_argument("bot delay must be non-negative");
}

std::string BotPolicy::name() const {
  std::string out = to_string(kind);
  if (kind == BotKind::NoisySkill) {
    out += "(" + std::to_string(static_cast<int>(std::lround(skill * 100))) + "%)";
  }
  return out;
}

namespace {

int terminal_score(const ReachableTerminal& t, const PlayableChallenge& challenge) {
  const bool bonus = challenge.bonus_position && (t.kept_mask & (1u << *challenge.bonus_position));
  return word_score(t.word, bonus);
}

/// Highest (or lowest) score; ties by word length the same way, then the
/// more frequent word, then mask, so the pick is deterministic.
const ReachableTerminal& greedy_pick(const ReachabilityReport& report, const PlayableChallenge& challenge,
                                     const Dictionary& dictionary, bool longest) {
  auto key_less = [&](const ReachableTerminal& a, const ReachableTerminal& b) {
    const int sa = terminal_score(a, challenge), sb = terminal_score(b, challenge);
    if (sa != sb) return longest ? sa > sb : sa < sb;
    if (a.word.size() != b.word.size()) return longest ? a.word.size() > b.word.size() : a.word.size() < b.word.size();
    if (a.word != b.word) return dictionary.rank(a.word) < dictionary.rank(b.word);
    return a.kept_mask > b.kept_mask;
  };
  return *std::min_element(report.terminals.begin(), report.terminals.end(), key_less);
}

const ReachableTerminal& random_pick(const ReachabilityReport& report, Rng& rng) {
  const std::string& word = report.reachable[rng.below(report.reachable.size())];
  std::vector<const ReachableTerminal*> options;
  for (const auto& t : report.terminals) {
    if (t.word == word) options.push_back(&t);
  }
  return *options[rng.below(options.size())];
}

std::optional<SolutionPlan> plan_with(const BotPolicy& policy, const PlayableChallenge& challenge,
                                      const ReachabilityReport& report, const Dictionary& dictionary, Rng& rng) {
  if (policy.kind == BotKind::DeliberatelyNaive) {
    std::vector<std::string> pool = report.reachable;
    pool.insert(pool.end(), report.unreachable_embedded.begin(), report.unreachable_embedded.end());
    if (pool.empty()) return std::nullopt;
    std::sort(pool.begin(), pool.end());
    SolutionPlan plan{pool[rng.below(pool.size())], {}};
    const auto keep = leftmost_embedding(plan.target, challenge.word);
    for (std::size_t i = 0; i < challenge.word.size(); ++i) {
      if (std::find(keep.begin(), keep.end(), i) == keep.end()) plan.eliminations.push_back(i);
    }
    return plan;
  }
  if (report.terminals.empty()) return std::nullopt;

  const ReachableTerminal* target = nullptr;
  switch (policy.kind) {
    case BotKind::GreedyLongest: target = &greedy_pick(report, challenge, dictionary, true); break;
    case BotKind::GreedyShortest: target = &greedy_pick(report, challenge, dictionary, false); break;
    case BotKind::Random: target = &random_pick(report, rng); break;
    case BotKind::NoisySkill:
      target = rng.chance(policy.skill) ? &greedy_pick(report, challenge, dictionary, true) : &random_pick(report, rng);
      break;
    case BotKind::DeliberatelyNaive: break;
  }
  return SolutionPlan{target->word, elimination_path(challenge.word, target->kept_mask, dictionary)};
}

class ReportCache {
 public:
  explicit ReportCache(const Dictionary& dictionary) : dictionary_(dictionary) {}
  const ReachabilityReport& get(const std::string& word) {
    auto it = cache_.find(word);
    if (it == cache_.end()) it = cache_.emplace(word, reachable_words(word, dictionary_)).first;
    return it->second;
  }

 private:
  const Dictionary& dictionary_;
  std::map<std::string, ReachabilityReport> cache_;
};

std::vector<PlaytraceEvent> play_session(const BotPolicy& policy, const GeneratedLevel& level,
                                         const Dictionary& dictionary, const std::string& session_id,
                                         const std::string& player_id, std::int64_t start_ms, Rng& rng,
                                         ReportCache& reports) {
  policy.validate();
  std::vector<PlaytraceEvent> events;
  auto emit = [&](std::size_t challenge, EventKind kind, std::int64_t ts) -> PlaytraceEvent& {
    PlaytraceEvent e;
    e.session_id = session_id;
    e.player_id = player_id;
    e.level_index = level.index;
    e.challenge_index = challenge;
    e.kind = kind;
    e.timestamp_ms = ts;
    events.push_back(std::move(e));
    return events.back();
  };

  const auto challenges = playable_challenges(level);
  LevelSession session(level.index, challenges);
  std::int64_t now = start_ms;
  while (!session.ended()) {
    const ChallengeState& state = session.current();
    const auto number = static_cast<std::size_t>(state.challenge_number());
    const std::int64_t started = now;
    const auto budget_ms = static_cast<std::int64_t>(std::ceil(state.budget_ms()));
    emit(number, EventKind::Start, now);

    const auto& challenge = challenges[number - 1];
    const auto plan = plan_with(policy, challenge, reports.get(challenge.word), dictionary, rng);
    bool solved = false;
    if (plan) {
      for (auto index : plan->eliminations) {
        if (now + policy.per_letter_delay_ms - started >= budget_ms) break;
        session.apply(TickEvent{policy.per_letter_delay_ms}, dictionary);
        now += policy.per_letter_delay_ms;
        session.apply(EliminateEvent{index}, dictionary);
        emit(number, EventKind::Eliminate, now).original_index = index;
        const ChallengeState& played = session.states()[number - 1];
        if (played.status() == ChallengeStatus::Solved) {
          auto& solve = emit(number, EventKind::Solve, now);
          solve.word = played.solved_word();
          solve.score = played.score();
          solved = true;
          break;
        }
      }
    }
    if (!solved) {
      // Out of clicks or out of time: the clock runs down.
      session.apply(TickEvent{started + budget_ms - now}, dictionary);
      now = started + budget_ms;
      emit(number, EventKind::Timeout, now);
    }
  }
  return events;
}

}  // namespace

std::optional<SolutionPlan> plan_solution(const BotPolicy& policy, const PlayableChallenge& challenge,
                                          const Dictionary& dictionary, Rng& rng) {
  policy.validate();
  return plan_with(policy, challenge, reachable_words(challenge.word, dictionary), dictionary, rng);
}

std::vector<PlaytraceEvent> simulate_session(const BotPolicy& policy, const GeneratedLevel& level,
                                             const Dictionary& dictionary, const std::string& session_id,
                                             const std::string& player_id, std::int64_t start_ms, Rng& rng) {
  ReportCache reports(dictionary);
  return play_session(policy, level, dictionary, session_id, player_id, start_ms, rng, reports);
}

std::vector<PlaytraceEvent> simulate_corpus(const std::vector<BotPolicy>& policies,
                                            const std::vector<GeneratedLevel>& levels, std::size_t runs,
                                            std::uint64_t seed, const Dictionary& dictionary,
                                            const SimulationOptions& options) {
  ReportCache reports(dictionary);
  std::vector<PlaytraceEvent> log;
  std::int64_t start = options.start_timestamp_ms;
  for (std::size_t p = 0; p < policies.size(); ++p) {
    for (std::size_t run = 0; run < runs; ++run) {
      const std::string player = "bot-" + std::to_string(p) + "-" + std::string(to_string(policies[p].kind)) + "-" +
                                 std::to_string(run);
      for (const auto& level : levels) {
        Rng rng(derive_seed(seed, p * 1'000'003 + run, level.index));
        const std::string session = player + "-L" + std::to_string(level.index);
        auto events = play_session(policies[p], level, dictionary, session, player, start, rng, reports);
        log.insert(log.end(), std::make_move_iterator(events.begin()), std::make_move_iterator(events.end()));
        start += options.session_spacing_ms;
      }
    }
  }
  return log;
}

}  // namespace elim
