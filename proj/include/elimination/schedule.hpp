#pragma once

#include <filesystem>
#include <vector>

#include "elimination/generation.hpp"

namespace elim {

/// Scalar difficulty proxy used to shape the level sequence:
/// targetLength - maxSeq + depth - num2X, where depth = (minRank - 1) / 1000
/// measures how far into the rarer words the source window starts.
double difficulty_proxy(const GenerationParams& params);

/// The shipped 30-level table: difficulty rises across each block of five
/// levels and falls back at levels 6, 11, 16, 21 and 26.
std::vector<GenerationParams> default_schedule();

/// Reads a schedule override (JSON array of 30 parameter objects).
std::vector<GenerationParams> load_schedule(const std::filesystem::path& path);
void save_schedule(const std::vector<GenerationParams>& schedule, const std::filesystem::path& path);

}  // namespace elim
