#include "elimination/schedule.hpp"

#include <fstream>

#include "elimination/level_io.hpp"

namespace elim {

double difficulty_proxy(const GenerationParams& params) {
  const double depth = static_cast<double>(params.corpus_freq.min_rank - 1) / 1000.0;
  return static_cast<double>(params.target_length) - static_cast<double>(params.max_seq) + depth -
         static_cast<double>(params.num_2x);
}

std::vector<GenerationParams> default_schedule() {
  struct Step {
    std::vector<std::size_t> sources;
    std::size_t target_length;
    std::size_t max_seq;
    std::size_t num_2x;
  };
  // Position within a five-level block. The second half of the game shifts
  // every step one letter longer.
  const std::vector<Step> early = {
      {{3, 3}, 5, 4, 3}, {{3, 4}, 6, 4, 3}, {{4, 4}, 7, 3, 2}, {{4, 5}, 8, 3, 1}, {{3, 3, 4}, 9, 3, 1}};
  const std::vector<Step> late = {
      {{3, 4}, 6, 4, 3}, {{4, 4}, 7, 4, 3}, {{4, 5}, 8, 3, 2}, {{3, 3, 4}, 9, 3, 1}, {{3, 4, 4}, 10, 3, 1}};

  std::vector<GenerationParams> schedule;
  for (std::size_t block = 0; block < 6; ++block) {
    const auto& steps = block < 3 ? early : late;
    for (std::size_t j = 0; j < 5; ++j) {
      GenerationParams p;
      p.corpus_freq.min_rank = 1 + 400 * j + 200 * block;
      p.corpus_freq.max_rank = p.corpus_freq.min_rank + 4000 + 1000 * block;
      p.source_words = steps[j].sources;
      p.target_length = steps[j].target_length;
      p.max_seq = steps[j].max_seq;
      p.num_2x = steps[j].num_2x;
      schedule.push_back(std::move(p));
    }
  }
  return schedule;
}

std::vector<GenerationParams> load_schedule(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read schedule: " + path.string());
  const auto doc = nlohmann::json::parse(in);
  if (!doc.is_array() || doc.size() != kLevelCount) {
    throw std::runtime_error("schedule must be a JSON array of " + std::to_string(kLevelCount) + " entries");
  }
  std::vector<GenerationParams> schedule;
  for (const auto& row : doc) {
    auto params = params_from_json(row);
    params.validate();
    schedule.push_back(std::move(params));
  }
  return schedule;
}

void save_schedule(const std::vector<GenerationParams>& schedule, const std::filesystem::path& path) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& p : schedule) doc.push_back(params_to_json(p));
  std::ofstream out(path);
  out << doc.dump(2) << '\n';
}

}  // namespace elim
