#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "elimination/corpus.hpp"
#include "elimination/game.hpp"
#include "elimination/generation.hpp"
#include "elimination/random.hpp"
#include "elimination/trace.hpp"

namespace elim {

enum class BotKind { Random, GreedyLongest, GreedyShortest, NoisySkill, DeliberatelyNaive };

const char* to_string(BotKind kind);
std::optional<BotKind> bot_kind_from_string(std::string_view text);

struct BotPolicy {
  BotKind kind = BotKind::GreedyLongest;
  double skill = 1.0;                  // NoisySkill: chance of the greedy pick
  std::int64_t per_letter_delay_ms = 2000;

  /// Throws std::invalid_argument on skill outside [0,1] or a negative delay.
  void validate() const;
  std::string name() const;
};

struct SolutionPlan {
  std::string target;                     // the word the bot is aiming for
  std::vector<std::size_t> eliminations;  // original indices, in click order
};

/// Chooses a target and the clicks to reach it. Targets come from the
/// reachable set, so replaying the clicks ends on the target; the naive bot
/// instead aims at any embedded word and may get auto-solved elsewhere.
/// Returns nullopt (give up) when nothing can be formed.
std::optional<SolutionPlan> plan_solution(const BotPolicy& policy, const PlayableChallenge& challenge,
                                          const Dictionary& dictionary, Rng& rng);

struct SimulationOptions {
  std::int64_t start_timestamp_ms = 1'700'000'000'000;
  std::int64_t session_spacing_ms = 3'600'000;
};

/// Plays one session of `level` and returns its trace events.
std::vector<PlaytraceEvent> simulate_session(const BotPolicy& policy, const GeneratedLevel& level,
                                             const Dictionary& dictionary, const std::string& session_id,
                                             const std::string& player_id, std::int64_t start_ms, Rng& rng);

/// Every policy plays every level `runs` times; run r of policy p is one
/// synthetic player. Output is ordered by (policy, run, level).
std::vector<PlaytraceEvent> simulate_corpus(const std::vector<BotPolicy>& policies,
                                            const std::vector<GeneratedLevel>& levels, std::size_t runs,
                                            std::uint64_t seed, const Dictionary& dictionary,
                                            const SimulationOptions& options = {});

}  // namespace elim
