#include <chrono>

#include "elimination/app.hpp"
#include "elimination/level_io.hpp"
#include "elimination/schedule.hpp"

namespace elim {

Dictionary load_dictionary(const AppConfig& config) {
  Dictionary dictionary = Dictionary::load(config.dictionary_path);
  if (!config.profanity_path.empty() && std::filesystem::exists(config.profanity_path)) {
    dictionary.load_profanity(config.profanity_path);
  }
  return dictionary;
}

std::vector<GenerationParams> load_schedule_or_default(const AppConfig& config) {
  return config.schedule_path ? load_schedule(*config.schedule_path) : default_schedule();
}

nlohmann::json make_manifest(const AppConfig& config, const std::vector<GenerationParams>& schedule,
                             const Dictionary& dictionary) {
  nlohmann::json rows = nlohmann::json::array();
  nlohmann::json files = nlohmann::json::array();
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    rows.push_back(params_to_json(schedule[i]));
    files.push_back({{"index", i + 1}, {"file", level_file_name(i + 1)}});
  }
  return {{"generatorVersion", kGeneratorVersion},
          {"seed", config.seed},
          {"dictionaryWords", dictionary.size()},
          {"schedule", rows},
          {"levels", files}};
}

std::int64_t SystemClock::now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

}  // namespace elim
