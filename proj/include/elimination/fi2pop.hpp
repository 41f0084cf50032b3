#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "elimination/generation.hpp"

namespace elim {

struct Individual {
  Chromosome genes;
  EvalResult eval;
};

/// Feasible/infeasible two-population search for one challenge. Feasible
/// individuals compete on fitness, infeasible ones on the length constraint;
/// every offspring lands in the population matching its own feasibility.
class Fi2PopSearch {
 public:
  Fi2PopSearch(const GenerationParams& params, const Dictionary& dictionary, std::uint64_t seed,
               EvolutionConfig config = {});

  /// One generation: elitism, tournament breeding within each population,
  /// crossover, mutation, re-partition by feasibility.
  void step();

  /// Runs until the generation budget is spent or the fitness ceiling is hit.
  void run();

  bool done() const;
  std::size_t generation() const { return generation_; }
  const std::vector<Individual>& feasible() const { return feasible_; }
  const std::vector<Individual>& infeasible() const { return infeasible_; }
  const Individual* best_feasible() const { return best_feasible_ ? &*best_feasible_ : nullptr; }
  const Individual* best_infeasible() const;

 private:
  Individual make(Chromosome genes);
  void place(Individual ind, std::vector<Individual>& feasible, std::vector<Individual>& infeasible);
  void track_best(const Individual& ind);
  const Individual& tournament(const std::vector<Individual>& pool, bool by_fitness);
  void breed(const std::vector<Individual>& pool, bool by_fitness, std::size_t count,
             std::vector<Individual>& feasible, std::vector<Individual>& infeasible);
  void mutate(Chromosome& c);

  GenerationParams params_;
  const Dictionary* dictionary_;
  CorpusSlice slice_;
  EvolutionConfig config_;
  Rng rng_;
  std::size_t generation_ = 0;
  std::vector<Individual> feasible_;
  std::vector<Individual> infeasible_;
  std::optional<Individual> best_feasible_;
  std::unordered_map<std::string, EvalResult> cache_;
};

}  // namespace elim
