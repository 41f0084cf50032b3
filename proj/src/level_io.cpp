#include "elimination/level_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace elim {

using nlohmann::json;

json params_to_json(const GenerationParams& p) {
  return json{{"corpusFreq", {{"minRank", p.corpus_freq.min_rank}, {"maxRank", p.corpus_freq.max_rank}}},
              {"sourceWords", p.source_words},
              {"targetLength", p.target_length},
              {"maxSeq", p.max_seq},
              {"num2X", p.num_2x}};
}

GenerationParams params_from_json(const json& doc) {
  GenerationParams p;
  p.corpus_freq.min_rank = doc.at("corpusFreq").at("minRank").get<std::size_t>();
  p.corpus_freq.max_rank = doc.at("corpusFreq").at("maxRank").get<std::size_t>();
  p.source_words = doc.at("sourceWords").get<std::vector<std::size_t>>();
  p.target_length = doc.at("targetLength").get<std::size_t>();
  p.max_seq = doc.at("maxSeq").get<std::size_t>();
  p.num_2x = doc.at("num2X").get<std::size_t>();
  return p;
}

json challenge_to_json(const GeneratedChallenge& c) {
  json sources = json::array();
  for (const auto& s : c.sources) sources.push_back({{"word", s.word}, {"positions", s.positions}});
  return json{{"challengeWord", c.challenge_word},
              {"sourceWords", sources},
              {"bonusPosition", c.bonus_position ? json(*c.bonus_position) : json(nullptr)},
              {"fitness", c.fitness},
              {"constraint", c.constraint},
              {"seed", c.seed}};
}

GeneratedChallenge challenge_from_json(const json& doc) {
  GeneratedChallenge c;
  c.challenge_word = doc.at("challengeWord").get<std::string>();
  for (const auto& s : doc.at("sourceWords")) {
    c.sources.push_back(
        SourceEmbedding{s.at("word").get<std::string>(), s.at("positions").get<std::vector<std::size_t>>()});
  }
  if (const auto& b = doc.at("bonusPosition"); !b.is_null()) c.bonus_position = b.get<std::size_t>();
  c.fitness = doc.at("fitness").get<double>();
  c.constraint = doc.at("constraint").get<double>();
  c.seed = doc.at("seed").get<std::uint64_t>();
  return c;
}

json level_to_json(const GeneratedLevel& level) {
  json challenges = json::array();
  for (const auto& c : level.challenges) challenges.push_back(challenge_to_json(c));
  return json{{"index", level.index},
              {"seed", level.seed},
              {"params", params_to_json(level.params)},
              {"challenges", challenges}};
}

GeneratedLevel level_from_json(const json& doc) {
  GeneratedLevel level;
  level.index = doc.at("index").get<std::size_t>();
  level.seed = doc.at("seed").get<std::uint64_t>();
  level.params = params_from_json(doc.at("params"));
  for (const auto& c : doc.at("challenges")) level.challenges.push_back(challenge_from_json(c));
  return level;
}

std::string serialize_level(const GeneratedLevel& level) { return level_to_json(level).dump(2) + "\n"; }

GeneratedLevel parse_level(const std::string& text) { return level_from_json(json::parse(text)); }

std::string level_file_name(std::size_t index) {
  char name[32];
  std::snprintf(name, sizeof name, "level_%02zu.json", index);
  return name;
}

void write_level(const GeneratedLevel& level, const std::filesystem::path& dir) {
  std::ofstream out(dir / level_file_name(level.index), std::ios::binary);
  if (!out) throw std::runtime_error("cannot write level file in " + dir.string());
  out << serialize_level(level);
}

GeneratedLevel read_level(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read level file: " + file.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_level(text.str());
}

std::vector<GeneratedLevel> read_levels(const std::filesystem::path& dir) {
  std::vector<GeneratedLevel> levels;
  for (std::size_t i = 1; i <= kLevelCount; ++i) {
    const auto file = dir / level_file_name(i);
    if (std::filesystem::exists(file)) levels.push_back(read_level(file));
  }
  return levels;
}

}  // namespace elim
