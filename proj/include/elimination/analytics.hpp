#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "elimination/corpus.hpp"
#include "elimination/generation.hpp"
#include "elimination/regression.hpp"
#include "elimination/trace.hpp"

namespace elim {

/// Sum over challenges of the best reachable score, counting the 2X bonus
/// only where some reachable ending keeps the bonus letter.
int max_level_score(const GeneratedLevel& level, const Dictionary& dictionary);

struct LevelOutcome {
  std::size_t level_index = 0;
  std::string player_id;
  std::string session_id;
  double normalized_score = 0.0;
};

struct CurvePoint {
  std::size_t level_index = 0;
  double mean_normalized_score = 0.0;
  std::size_t sessions = 0;
};

struct DifficultyCurve {
  std::vector<CurvePoint> points;             // ordered by level
  std::vector<std::size_t> missing_levels;    // expected levels with no outcome
};

/// Mean normalized score per level. Levels listed in `expected_levels` that
/// have no outcome are omitted from the points and reported as missing.
DifficultyCurve difficulty_curve(const std::vector<LevelOutcome>& outcomes,
                                 const std::vector<std::size_t>& expected_levels = {});

struct WordFeatures {
  std::size_t word_length = 0;
  std::size_t max_sequence = 0;
  bool has_2x = false;
  std::size_t split_distance = 0;
  std::size_t first_occurrence = 0;
  bool dirty_word = false;
  std::vector<std::size_t> positions;  // canonical embedding
};

/// Features of `word` inside the challenge, measured on the embedding with
/// the smallest split distance (then the earliest first letter). Throws
/// std::domain_error when the word is not embedded.
WordFeatures extract_word_features(const PlayableChallenge& challenge, const std::string& word,
                                   const Dictionary& dictionary);

struct WordSelectionRecord {
  std::size_t level_index = 0;
  std::size_t challenge_index = 0;  // 1..10
  std::string word;
  double selection_rate = 0.0;
  std::size_t solves = 0;
  WordFeatures features;
};

/// Per challenge with at least one solve: the share of solved attempts that
/// ended on each reachable word. Throws TraceError when a replay holds a word
/// the challenge cannot end on.
std::vector<WordSelectionRecord> selection_rates(const std::vector<SessionReplay>& replays, const GeneratedLevel& level,
                                                 const Dictionary& dictionary);

inline const std::vector<std::string> kLevelModelFeatures = {"minCorpusFreq", "maxSeq", "targetLength", "num2X",
                                                             "minSourceWord"};
inline const std::vector<std::string> kWordModelFeatures = {"wordLength",    "maxSequence",     "has2X",
                                                            "splitDistance", "firstOccurrence", "dirtyWord"};

/// normalizedScore ~ min(corpusFreq) + maxSeq + targetLength + num2X + min(sourceWords),
/// one row per level on the curve. Needs at least 7 levels.
RegressionModel level_score_model(const DifficultyCurve& curve, const std::vector<GenerationParams>& schedule);

/// selectionRate ~ wordLength + maxSequence + has2X + splitDistance +
/// firstOccurrence + dirtyWord. Needs at least 50 records. Features that are
/// constant across the records are dropped and listed in the model.
RegressionModel word_choice_model(const std::vector<WordSelectionRecord>& records);

struct AnalysisReport {
  DifficultyCurve curve;
  std::vector<LevelOutcome> outcomes;
  std::optional<RegressionModel> level_model;
  std::string level_model_error;
  std::optional<RegressionModel> word_model;
  std::string word_model_error;
  std::vector<WordSelectionRecord> records;
  std::vector<TraceDiagnostic> diagnostics;
  std::size_t sessions_total = 0;
  std::size_t sessions_replayed = 0;
};

/// Replays every session against its level, then builds the curve, the
/// selection-rate table and both regressions. Sessions that fail replay are
/// excluded and reported in the diagnostics.
AnalysisReport analyze(const std::vector<GeneratedLevel>& levels, const TraceParseResult& traces,
                       const Dictionary& dictionary);

nlohmann::json report_to_json(const AnalysisReport& report);
std::string report_summary(const AnalysisReport& report);

}  // namespace elim
