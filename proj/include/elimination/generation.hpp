#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "elimination/corpus.hpp"
#include "elimination/random.hpp"

namespace elim {

inline constexpr std::size_t kChallengesPerLevel = 10;
inline constexpr std::size_t kLevelCount = 30;

struct RankWindow {
  std::size_t min_rank = 1;
  std::size_t max_rank = 1;
  bool operator==(const RankWindow&) const = default;
};

/// The five per-level difficulty controls.
struct GenerationParams {
  RankWindow corpus_freq;
  std::vector<std::size_t> source_words;  // length of each source word
  std::size_t target_length = 0;
  std::size_t max_seq = 0;
  std::size_t num_2x = 0;

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate(const DictionaryOptions& options = {}) const;
  std::size_t source_letter_total() const;

  bool operator==(const GenerationParams&) const = default;
};

struct Chromosome {
  std::vector<std::uint32_t> source_genes;
  std::vector<std::uint32_t> mix_genes;

  std::size_t size() const { return source_genes.size() + mix_genes.size(); }
  std::uint32_t& gene(std::size_t i) {
    return i < source_genes.size() ? source_genes[i] : mix_genes[i - source_genes.size()];
  }

  static Chromosome random(const GenerationParams& params, Rng& rng, std::uint32_t gene_limit);
  bool operator==(const Chromosome&) const = default;
};

struct FitnessBreakdown {
  std::vector<std::string> words;  // every embedded word
  std::size_t long_count = 0;
  std::size_t short_count = 0;
  std::size_t v = 0;  // long words present as contiguous substrings
  std::size_t e = 0;  // short words present as contiguous substrings
};

struct EvalResult {
  std::string challenge_word;
  std::vector<std::string> sources;
  double constraint = 0.0;
  double fitness = 0.0;
  bool feasible = false;
  FitnessBreakdown breakdown;
};

struct SourceEmbedding {
  std::string word;
  std::vector<std::size_t> positions;  // indices into the challenge word
  bool operator==(const SourceEmbedding&) const = default;
};

struct GeneratedChallenge {
  std::string challenge_word;
  std::vector<SourceEmbedding> sources;
  std::optional<std::size_t> bonus_position;
  double fitness = 0.0;
  double constraint = 0.0;
  std::uint64_t seed = 0;
  bool operator==(const GeneratedChallenge&) const = default;
};

struct GeneratedLevel {
  std::size_t index = 0;
  GenerationParams params;
  std::uint64_t seed = 0;
  std::vector<GeneratedChallenge> challenges;
  bool operator==(const GeneratedLevel&) const = default;
};

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No feasible individual after the generation budget. Carries the best
/// infeasible candidate for diagnostics.
class GenerationFailure : public std::runtime_error {
 public:
  GenerationFailure(const std::string& what, EvalResult best_infeasible,
                    std::optional<std::size_t> challenge_index = std::nullopt)
      : std::runtime_error(what), best_infeasible_(std::move(best_infeasible)), challenge_index_(challenge_index) {}
  const EvalResult& best_infeasible() const { return best_infeasible_; }
  std::optional<std::size_t> challenge_index() const { return challenge_index_; }

 private:
  EvalResult best_infeasible_;
  std::optional<std::size_t> challenge_index_;
};

std::vector<std::string> decode_sources(const Chromosome& chromosome, const GenerationParams& params,
                                        const CorpusSlice& slice);

/// Interleaves the source words. Each mix gene picks which still-active word
/// supplies the next letter.
std::string mix_sources(const Chromosome& chromosome, const std::vector<std::string>& words);

/// Left-to-right single-letter removal while every source stays a
/// subsequence, restarting after each removal, until |w| <= target_length or
/// nothing more can go.
std::string greedy_reduce(std::string word, const std::vector<std::string>& sources, std::size_t target_length);

/// Length constraint: 1 inside the bound, 1 - ln(|w| - tl + 1) beyond it.
double constraint_score(std::size_t word_length, std::size_t target_length);
inline double constraint_score(const std::string& word, std::size_t target_length) {
  return constraint_score(word.size(), target_length);
}

/// Fitness from the embedded-word split around `max_seq`; an empty Long or
/// Short set contributes a zero ratio.
double fitness_from_counts(std::size_t e, std::size_t short_count, std::size_t v, std::size_t long_count);
double fitness_score(const std::string& word, std::size_t max_seq, const Dictionary& dictionary,
                     FitnessBreakdown* breakdown = nullptr);

/// Full decode -> mix -> reduce -> score pipeline for one chromosome.
EvalResult evaluate(const Chromosome& chromosome, const GenerationParams& params, const CorpusSlice& slice,
                    const Dictionary& dictionary);

/// Leftmost embedding of `word` in `challenge`; empty if not a subsequence.
std::vector<std::size_t> leftmost_embedding(std::string_view word, std::string_view challenge);

struct EvolutionConfig {
  std::size_t population = 100;
  std::size_t max_generations = 300;
  std::size_t tournament_size = 3;
  double crossover_rate = 0.7;
  double mutation_rate = 0.1;
  std::size_t elitism = 1;
  std::uint32_t gene_limit = 1u << 24;
  /// Stop early once a feasible individual reaches fitness 1.
  bool stop_at_max_fitness = true;
  /// Worker threads for the challenges of a level; 0 = hardware concurrency.
  std::size_t threads = 0;
};

GeneratedChallenge evolve_challenge(const GenerationParams& params, const Dictionary& dictionary, std::uint64_t seed,
                                    const EvolutionConfig& config = {});

/// Marks `num_2x` random challenges with a bonus on one of the rarest letters
/// of their source words.
GeneratedLevel assign_bonus(GeneratedLevel level, const Dictionary& dictionary, std::uint64_t seed);

GeneratedLevel generate_level(std::size_t index, const std::vector<GenerationParams>& schedule,
                              const Dictionary& dictionary, std::uint64_t seed, const EvolutionConfig& config = {});

/// Reasons a challenge fails validation against its level parameters; empty
/// when valid.
std::vector<std::string> validate_challenge(const GeneratedChallenge& challenge, const GenerationParams& params,
                                            const Dictionary& dictionary);
std::vector<std::string> validate_level(const GeneratedLevel& level, const Dictionary& dictionary);

}  // namespace elim
