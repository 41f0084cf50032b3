#include "elimination/fi2pop.hpp"

#include <algorithm>

namespace elim {

namespace {

bool better_feasible(const EvalResult& a, const EvalResult& b) { return a.fitness > b.fitness; }
bool better_infeasible(const EvalResult& a, const EvalResult& b) { return a.constraint > b.constraint; }

}  // namespace

Fi2PopSearch::Fi2PopSearch(const GenerationParams& params, const Dictionary& dictionary, std::uint64_t seed,
                           EvolutionConfig config)
    : params_(params),
      dictionary_(&dictionary),
      slice_(dictionary, params.corpus_freq.min_rank, params.corpus_freq.max_rank),
      config_(config),
      rng_(seed) {
  params_.validate(dictionary.options());
  if (config_.population < 2) throw std::invalid_argument("population must hold at least two individuals");
  if (config_.tournament_size == 0) throw std::invalid_argument("tournament size must be positive");
  for (std::size_t i = 0; i < config_.population; ++i) {
    place(make(Chromosome::random(params_, rng_, config_.gene_limit)), feasible_, infeasible_);
  }
}

Individual Fi2PopSearch::make(Chromosome genes) {
  // Decoding depends only on the genes, scoring only on the reduced word.
  EvalResult eval;
  eval.sources = decode_sources(genes, params_, slice_);
  eval.challenge_word = greedy_reduce(mix_sources(genes, eval.sources), eval.sources, params_.target_length);
  if (auto hit = cache_.find(eval.challenge_word); hit != cache_.end()) {
    eval.constraint = hit->second.constraint;
    eval.fitness = hit->second.fitness;
    eval.feasible = hit->second.feasible;
    eval.breakdown = hit->second.breakdown;
  } else {
    eval.constraint = constraint_score(eval.challenge_word, params_.target_length);
    if (eval.constraint == 1.0) {
      eval.fitness = fitness_score(eval.challenge_word, params_.max_seq, *dictionary_, &eval.breakdown);
      eval.feasible = !dictionary_->contains(eval.challenge_word) && eval.breakdown.words.size() >= 2;
    }
    cache_.emplace(eval.challenge_word, eval);
  }
  return Individual{std::move(genes), std::move(eval)};
}

void Fi2PopSearch::place(Individual ind, std::vector<Individual>& feasible, std::vector<Individual>& infeasible) {
  if (ind.eval.feasible) {
    track_best(ind);
    feasible.push_back(std::move(ind));
  } else {
    infeasible.push_back(std::move(ind));
  }
}

void Fi2PopSearch::track_best(const Individual& ind) {
  if (!best_feasible_ || better_feasible(ind.eval, best_feasible_->eval)) best_feasible_ = ind;
}

const Individual& Fi2PopSearch::tournament(const std::vector<Individual>& pool, bool by_fitness) {
  const Individual* winner = &pool[rng_.below(pool.size())];
  for (std::size_t i = 1; i < config_.tournament_size; ++i) {
    const Individual& challenger = pool[rng_.below(pool.size())];
    const bool wins = by_fitness ? better_feasible(challenger.eval, winner->eval)
                                 : better_infeasible(challenger.eval, winner->eval);
    if (wins) winner = &challenger;
  }
  return *winner;
}

void Fi2PopSearch::mutate(Chromosome& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (rng_.chance(config_.mutation_rate)) c.gene(i) = static_cast<std::uint32_t>(rng_.below(config_.gene_limit));
  }
}

void Fi2PopSearch::breed(const std::vector<Individual>& pool, bool by_fitness, std::size_t count,
                         std::vector<Individual>& feasible, std::vector<Individual>& infeasible) {
  std::size_t produced = 0;
  while (produced < count) {
    Chromosome a = tournament(pool, by_fitness).genes;
    Chromosome b = tournament(pool, by_fitness).genes;
    if (a.size() > 1 && rng_.chance(config_.crossover_rate)) {
      const std::size_t cut = 1 + rng_.below(a.size() - 1);
      for (std::size_t i = cut; i < a.size(); ++i) std::swap(a.gene(i), b.gene(i));
    }
    mutate(a);
    mutate(b);
    place(make(std::move(a)), feasible, infeasible);
    if (++produced == count) break;
    place(make(std::move(b)), feasible, infeasible);
    ++produced;
  }
}

void Fi2PopSearch::step() {
  std::vector<Individual> next_feasible;
  std::vector<Individual> next_infeasible;

  std::size_t feasible_offspring = feasible_.size();
  if (!feasible_.empty()) {
    std::vector<const Individual*> ranked;
    for (const auto& ind : feasible_) ranked.push_back(&ind);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const Individual* a, const Individual* b) { return better_feasible(a->eval, b->eval); });
    const std::size_t elites = std::min(config_.elitism, ranked.size());
    for (std::size_t i = 0; i < elites; ++i) next_feasible.push_back(*ranked[i]);
    feasible_offspring -= elites;
    breed(feasible_, true, feasible_offspring, next_feasible, next_infeasible);
  }
  if (!infeasible_.empty()) breed(infeasible_, false, infeasible_.size(), next_feasible, next_infeasible);

  feasible_ = std::move(next_feasible);
  infeasible_ = std::move(next_infeasible);
  ++generation_;
}

bool Fi2PopSearch::done() const {
  if (generation_ >= config_.max_generations) return true;
  return config_.stop_at_max_fitness && best_feasible_ && best_feasible_->eval.fitness >= 1.0 - 1e-12;
}

void Fi2PopSearch::run() {
  while (!done()) step();
}

const Individual* Fi2PopSearch::best_infeasible() const {
  const Individual* best = nullptr;
  for (const auto& ind : infeasible_) {
    if (!best || better_infeasible(ind.eval, best->eval)) best = &ind;
  }
  return best;
}

GeneratedChallenge evolve_challenge(const GenerationParams& params, const Dictionary& dictionary, std::uint64_t seed,
                                    const EvolutionConfig& config) {
  Fi2PopSearch search(params, dictionary, seed, config);
  search.run();
  const Individual* best = search.best_feasible();
  if (!best) {
    const Individual* fallback = search.best_infeasible();
    throw GenerationFailure("no feasible challenge after " + std::to_string(search.generation()) + " generations",
                            fallback ? fallback->eval : EvalResult{});
  }
  GeneratedChallenge out;
  out.challenge_word = best->eval.challenge_word;
  for (const auto& s : best->eval.sources) {
    out.sources.push_back(SourceEmbedding{s, leftmost_embedding(s, out.challenge_word)});
  }
  out.fitness = best->eval.fitness;
  out.constraint = best->eval.constraint;
  out.seed = seed;
  return out;
}

}  // namespace elim
