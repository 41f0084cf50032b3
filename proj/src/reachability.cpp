#include <algorithm>
#include <bit>
#include <deque>
#include <set>

#include "elimination/game.hpp"

namespace elim {

namespace {

std::string spell(std::string_view word, std::uint32_t mask) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (mask & (1u << i)) out.push_back(word[i]);
  }
  return out;
}

void check_cap(std::string_view word, const Dictionary& dictionary) {
  if (word.size() > dictionary.options().enumeration_cap || word.size() > 31) {
    throw CorpusError("challenge word '" + std::string(word) + "' exceeds enumeration cap");
  }
}

/// BFS over kept-letter masks, restricted to supersets of `floor_mask`.
/// Absorbing states are not expanded; the untouched word never absorbs,
/// since only an elimination can trigger a solve. Calls `visit(mask, parent, removed,
/// absorbing)` for each newly discovered state.
template <typename Visit>
void explore(std::string_view word, std::uint32_t floor_mask, const Dictionary& dictionary, Visit&& visit) {
  const std::size_t n = word.size();
  const std::uint32_t full = n == 0 ? 0u : (n == 32 ? ~0u : (1u << n) - 1u);
  const std::size_t min_len = dictionary.min_word_length();
  std::vector<bool> seen(std::size_t{1} << n, false);
  std::deque<std::uint32_t> queue{full};
  seen[full] = true;
  auto absorbing = [&](std::uint32_t mask) {
    const auto kept = static_cast<std::size_t>(std::popcount(mask));
    return kept >= min_len && dictionary.contains(spell(word, mask));
  };
  if (visit(full, full, n, false)) return;
  while (!queue.empty()) {
    const std::uint32_t mask = queue.front();
    queue.pop_front();
    if (mask != full && absorbing(mask)) continue;
    if (static_cast<std::size_t>(std::popcount(mask)) <= min_len) continue;  // no word below this
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t bit = 1u << i;
      if (!(mask & bit) || (floor_mask & bit)) continue;
      const std::uint32_t child = mask & ~bit;
      if (seen[child]) continue;
      seen[child] = true;
      if (visit(child, mask, i, absorbing(child))) return;
      queue.push_back(child);
    }
  }
}

}  // namespace

bool ReachabilityReport::is_reachable(std::string_view word) const {
  return std::binary_search(reachable.begin(), reachable.end(), word);
}

bool ReachabilityReport::can_keep(std::string_view word, std::size_t position) const {
  return std::any_of(terminals.begin(), terminals.end(), [&](const ReachableTerminal& t) {
    return t.word == word && position < 32 && (t.kept_mask & (1u << position));
  });
}

ReachabilityReport reachable_words(std::string_view challenge_word, const Dictionary& dictionary) {
  check_cap(challenge_word, dictionary);
  ReachabilityReport report;
  std::set<std::string> reachable;
  explore(challenge_word, 0, dictionary, [&](std::uint32_t mask, std::uint32_t, std::size_t, bool absorbing) {
    if (absorbing) {
      auto word = spell(challenge_word, mask);
      reachable.insert(word);
      report.terminals.push_back({std::move(word), mask});
    }
    return false;
  });
  report.reachable.assign(reachable.begin(), reachable.end());
  for (auto& w : dictionary.embedded_words(challenge_word)) {
    if (!reachable.contains(w)) report.unreachable_embedded.push_back(std::move(w));
  }
  return report;
}

std::vector<std::size_t> elimination_path(std::string_view challenge_word, std::uint32_t target_mask,
                                          const Dictionary& dictionary) {
  check_cap(challenge_word, dictionary);
  const std::size_t n = challenge_word.size();
  const std::uint32_t full = n == 0 ? 0u : (1u << n) - 1u;
  if ((target_mask & ~full) != 0) throw RuleViolation("target mask has positions outside the challenge word");

  std::vector<std::uint32_t> parent(std::size_t{1} << n, 0);
  std::vector<std::uint8_t> removed(std::size_t{1} << n, 0);
  bool found = false;
  explore(challenge_word, target_mask, dictionary,
          [&](std::uint32_t mask, std::uint32_t from, std::size_t index, bool) {
            parent[mask] = from;
            removed[mask] = static_cast<std::uint8_t>(index);
            if (mask == target_mask) found = true;
            return found;
          });
  if (!found) {
    throw RuleViolation("no elimination sequence reaches '" + spell(challenge_word, target_mask) + "'");
  }
  std::vector<std::size_t> path;
  for (std::uint32_t mask = target_mask; mask != full; mask = parent[mask]) path.push_back(removed[mask]);
  std::reverse(path.begin(), path.end());
  return path;
}

int max_challenge_score(const PlayableChallenge& challenge, const Dictionary& dictionary) {
  const auto report = reachable_words(challenge.word, dictionary);
  int best = 0;
  for (const auto& t : report.terminals) {
    const bool bonus = challenge.bonus_position && (t.kept_mask & (1u << *challenge.bonus_position));
    best = std::max(best, word_score(t.word, bonus));
  }
  return best;
}

}  // namespace elim
