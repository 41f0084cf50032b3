#include "elimination/generation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

namespace elim {

void GenerationParams::validate(const DictionaryOptions& options) const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("generation params: " + msg); };
  if (source_words.size() < 2 || source_words.size() > 3) fail("need 2 or 3 source words");
  for (auto len : source_words) {
    if (len < options.min_word_length) fail("source word length below minimum word length");
  }
  const auto longest = *std::max_element(source_words.begin(), source_words.end());
  if (target_length < longest) fail("target length shorter than the longest source word");
  if (target_length > options.enumeration_cap) fail("target length exceeds the enumeration cap");
  if (max_seq == 0) fail("maxSeq must be positive");
  if (num_2x > kChallengesPerLevel) fail("num2X must be within 0..10");
  if (corpus_freq.min_rank < 1 || corpus_freq.min_rank > corpus_freq.max_rank) fail("invalid corpus rank window");
}

std::size_t GenerationParams::source_letter_total() const {
  std::size_t total = 0;
  for (auto len : source_words) total += len;
  return total;
}

Chromosome Chromosome::random(const GenerationParams& params, Rng& rng, std::uint32_t gene_limit) {
  Chromosome c;
  c.source_genes.resize(params.source_words.size());
  c.mix_genes.resize(params.source_letter_total());
  for (auto& g : c.source_genes) g = static_cast<std::uint32_t>(rng.below(gene_limit));
  for (auto& g : c.mix_genes) g = static_cast<std::uint32_t>(rng.below(gene_limit));
  return c;
}

std::vector<std::string> decode_sources(const Chromosome& chromosome, const GenerationParams& params,
                                        const CorpusSlice& slice) {
  if (chromosome.source_genes.size() != params.source_words.size()) {
    throw DecodeError("chromosome has " + std::to_string(chromosome.source_genes.size()) + " source genes, expected " +
                      std::to_string(params.source_words.size()));
  }
  std::vector<std::string> chosen;
  chosen.reserve(params.source_words.size());
  for (std::size_t i = 0; i < params.source_words.size(); ++i) {
    const auto candidates = slice.candidates(params.source_words[i]);
    if (candidates.empty()) {
      throw DecodeError("no " + std::to_string(params.source_words[i]) + "-letter words in rank window [" +
                        std::to_string(slice.min_rank()) + ", " + std::to_string(slice.max_rank()) + "]");
    }
    const std::size_t k = candidates.size();
    std::size_t idx = chromosome.source_genes[i] % k;
    std::size_t tries = 0;
    auto taken = [&](std::string_view w) { return std::find(chosen.begin(), chosen.end(), w) != chosen.end(); };
    while (taken(candidates[idx])) {
      if (++tries == k) throw DecodeError("not enough distinct candidates for source word " + std::to_string(i));
      idx = (idx + 1) % k;
    }
    chosen.emplace_back(candidates[idx]);
  }
  return chosen;
}

std::string mix_sources(const Chromosome& chromosome, const std::vector<std::string>& words) {
  std::vector<std::size_t> cursor(words.size(), 0);
  std::vector<std::size_t> active;
  std::string out;
  for (const auto& gene : chromosome.mix_genes) {
    active.clear();
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (cursor[i] < words[i].size()) active.push_back(i);
    }
    if (active.empty()) break;
    const auto pick = active[gene % active.size()];
    out.push_back(words[pick][cursor[pick]++]);
  }
  return out;
}

std::string greedy_reduce(std::string word, const std::vector<std::string>& sources, std::size_t target_length) {
  auto keeps_sources = [&](const std::string& candidate) {
    return std::all_of(sources.begin(), sources.end(),
                       [&](const std::string& s) { return is_subsequence(s, candidate); });
  };
  std::string candidate;
  bool removed = true;
  while (word.size() > target_length && removed) {
    removed = false;
    for (std::size_t i = 0; i < word.size(); ++i) {
      candidate = word;
      candidate.erase(i, 1);
      if (keeps_sources(candidate)) {
        word = std::move(candidate);
        removed = true;
        break;
      }
    }
  }
  return word;
}

double constraint_score(std::size_t word_length, std::size_t target_length) {
  if (word_length <= target_length) return 1.0;
  return 1.0 - std::log(static_cast<double>(word_length - target_length + 1));
}

double fitness_from_counts(std::size_t e, std::size_t short_count, std::size_t v, std::size_t long_count) {
  const double short_ratio = short_count == 0 ? 0.0 : static_cast<double>(e) / static_cast<double>(short_count);
  const double long_ratio = long_count == 0 ? 0.0 : static_cast<double>(v) / static_cast<double>(long_count);
  return (1.1 - short_ratio) * (1.1 - long_ratio) / 1.21;
}

double fitness_score(const std::string& word, std::size_t max_seq, const Dictionary& dictionary,
                     FitnessBreakdown* breakdown) {
  FitnessBreakdown local;
  FitnessBreakdown& b = breakdown ? *breakdown : local;
  b = FitnessBreakdown{};
  b.words = dictionary.embedded_words(word);
  for (const auto& w : b.words) {
    const bool contiguous = word.find(w) != std::string::npos;
    if (w.size() > max_seq) {
      ++b.long_count;
      if (contiguous) ++b.v;
    } else {
      ++b.short_count;
      if (contiguous) ++b.e;
    }
  }
  return fitness_from_counts(b.e, b.short_count, b.v, b.long_count);
}

EvalResult evaluate(const Chromosome& chromosome, const GenerationParams& params, const CorpusSlice& slice,
                    const Dictionary& dictionary) {
  EvalResult r;
  r.sources = decode_sources(chromosome, params, slice);
  r.challenge_word = greedy_reduce(mix_sources(chromosome, r.sources), r.sources, params.target_length);
  r.constraint = constraint_score(r.challenge_word, params.target_length);
  if (r.constraint == 1.0) {
    r.fitness = fitness_score(r.challenge_word, params.max_seq, dictionary, &r.breakdown);
    r.feasible = !dictionary.contains(r.challenge_word) && r.breakdown.words.size() >= 2;
  }
  return r;
}

std::vector<std::size_t> leftmost_embedding(std::string_view word, std::string_view challenge) {
  std::vector<std::size_t> positions;
  std::size_t i = 0;
  for (std::size_t p = 0; p < challenge.size() && i < word.size(); ++p) {
    if (challenge[p] == word[i]) {
      positions.push_back(p);
      ++i;
    }
  }
  if (i != word.size()) positions.clear();
  return positions;
}

GeneratedLevel assign_bonus(GeneratedLevel level, const Dictionary& dictionary, std::uint64_t seed) {
  Rng rng(seed);
  for (auto& c : level.challenges) c.bonus_position.reset();

  std::vector<std::size_t> order(level.challenges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  const std::size_t count = std::min(level.params.num_2x, order.size());

  const auto& freq = dictionary.letter_frequency();
  for (std::size_t k = 0; k < count; ++k) {
    auto& challenge = level.challenges[order[k]];
    // One candidate per source word: its rarest letter (alphabetical on ties),
    // located at that letter's first occurrence in the source embedding.
    std::vector<std::size_t> candidates;
    for (const auto& source : challenge.sources) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < source.word.size(); ++i) {
        const int a = source.word[i] - 'A';
        const int b = source.word[best] - 'A';
        if (freq[a] < freq[b] || (freq[a] == freq[b] && a < b)) best = i;
      }
      const auto first = source.word.find(source.word[best]);
      candidates.push_back(source.positions[first]);
    }
    if (!candidates.empty()) challenge.bonus_position = candidates[rng.below(candidates.size())];
  }
  return level;
}

GeneratedLevel generate_level(std::size_t index, const std::vector<GenerationParams>& schedule,
                              const Dictionary& dictionary, std::uint64_t seed, const EvolutionConfig& config) {
  if (index < 1 || index > schedule.size()) {
    throw std::out_of_range("schedule has no entry for level " + std::to_string(index));
  }
  GeneratedLevel level;
  level.index = index;
  level.params = schedule[index - 1];
  level.seed = seed;
  level.challenges.resize(kChallengesPerLevel);

  std::size_t threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
  threads = std::min(threads, kChallengesPerLevel);

  auto run = [&](std::size_t i) {
    try {
      return evolve_challenge(level.params, dictionary, derive_seed(seed, index, i), config);
    } catch (const GenerationFailure& failure) {
      throw GenerationFailure("level " + std::to_string(index) + " challenge " + std::to_string(i + 1) + ": " +
                                  failure.what(),
                              failure.best_infeasible(), i + 1);
    }
  };

  // Each challenge depends only on its own derived seed, so batching across
  // threads yields the same level as the sequential loop.
  for (std::size_t start = 0; start < kChallengesPerLevel; start += threads) {
    const std::size_t end = std::min(start + threads, kChallengesPerLevel);
    std::vector<std::future<GeneratedChallenge>> pending;
    for (std::size_t i = start; i < end; ++i) pending.push_back(std::async(std::launch::async, run, i));
    for (std::size_t i = start; i < end; ++i) level.challenges[i] = pending[i - start].get();
  }
  return assign_bonus(std::move(level), dictionary, derive_seed(seed, index, 1000));
}

std::vector<std::string> validate_challenge(const GeneratedChallenge& challenge, const GenerationParams& params,
                                            const Dictionary& dictionary) {
  std::vector<std::string> problems;
  const auto& w = challenge.challenge_word;
  if (w.size() > params.target_length) problems.push_back("challenge word longer than target length");
  if (dictionary.contains(w)) problems.push_back("challenge word is itself a dictionary word");
  if (challenge.sources.size() != params.source_words.size()) problems.push_back("wrong number of source words");
  for (const auto& s : challenge.sources) {
    if (!is_subsequence(s.word, w)) problems.push_back("source word " + s.word + " is not a subsequence");
    if (s.positions.size() != s.word.size()) {
      problems.push_back("source word " + s.word + " has a malformed embedding");
      continue;
    }
    for (std::size_t i = 0; i < s.positions.size(); ++i) {
      if (s.positions[i] >= w.size() || w[s.positions[i]] != s.word[i] ||
          (i > 0 && s.positions[i] <= s.positions[i - 1])) {
        problems.push_back("source word " + s.word + " embedding does not match the challenge word");
        break;
      }
    }
  }
  if (w.size() <= dictionary.options().enumeration_cap && dictionary.embedded_words(w).size() < 2) {
    problems.push_back("fewer than two embedded words");
  }
  if (challenge.bonus_position && *challenge.bonus_position >= w.size()) problems.push_back("bonus position out of range");
  return problems;
}

std::vector<std::string> validate_level(const GeneratedLevel& level, const Dictionary& dictionary) {
  std::vector<std::string> problems;
  if (level.challenges.size() != kChallengesPerLevel) {
    problems.push_back("level " + std::to_string(level.index) + " has " + std::to_string(level.challenges.size()) +
                       " challenges");
  }
  std::size_t bonuses = 0;
  for (std::size_t i = 0; i < level.challenges.size(); ++i) {
    if (level.challenges[i].bonus_position) ++bonuses;
    for (const auto& p : validate_challenge(level.challenges[i], level.params, dictionary)) {
      problems.push_back("level " + std::to_string(level.index) + " challenge " + std::to_string(i + 1) + ": " + p);
    }
  }
  if (bonuses != level.params.num_2x) {
    problems.push_back("level " + std::to_string(level.index) + " has " + std::to_string(bonuses) +
                       " bonus letters, expected " + std::to_string(level.params.num_2x));
  }
  return problems;
}

}  // namespace elim
