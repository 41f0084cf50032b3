#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "elimination/generation.hpp"

namespace elim {

inline constexpr const char* kGeneratorVersion = "elimination-fi2pop/1.0";

nlohmann::json params_to_json(const GenerationParams& params);
GenerationParams params_from_json(const nlohmann::json& doc);

nlohmann::json challenge_to_json(const GeneratedChallenge& challenge);
GeneratedChallenge challenge_from_json(const nlohmann::json& doc);

nlohmann::json level_to_json(const GeneratedLevel& level);
GeneratedLevel level_from_json(const nlohmann::json& doc);

/// Canonical on-disk text of a level; re-serializing a loaded level gives
/// back the same bytes.
std::string serialize_level(const GeneratedLevel& level);
GeneratedLevel parse_level(const std::string& text);

std::string level_file_name(std::size_t index);
void write_level(const GeneratedLevel& level, const std::filesystem::path& dir);
GeneratedLevel read_level(const std::filesystem::path& file);

/// Loads level_01.json .. level_30.json (whatever is present, in index order).
std::vector<GeneratedLevel> read_levels(const std::filesystem::path& dir);

}  // namespace elim
