#include "elimination/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace elim {

using nlohmann::json;

int max_level_score(const GeneratedLevel& level, const Dictionary& dictionary) {
  int total = 0;
  for (const auto& c : playable_challenges(level)) total += max_challenge_score(c, dictionary);
  return total;
}

DifficultyCurve difficulty_curve(const std::vector<LevelOutcome>& outcomes,
                                 const std::vector<std::size_t>& expected_levels) {
  std::map<std::size_t, std::pair<double, std::size_t>> sums;
  for (const auto& o : outcomes) {
    auto& [sum, count] = sums[o.level_index];
    sum += o.normalized_score;
    ++count;
  }
  DifficultyCurve curve;
  for (const auto& [level, acc] : sums) {
    curve.points.push_back({level, acc.first / static_cast<double>(acc.second), acc.second});
  }
  for (auto level : expected_levels) {
    if (!sums.contains(level)) curve.missing_levels.push_back(level);
  }
  return curve;
}

WordFeatures extract_word_features(const PlayableChallenge& challenge, const std::string& word,
                                   const Dictionary& dictionary) {
  const std::string& text = challenge.word;
  if (word.empty() || !is_subsequence(word, text)) {
    throw std::domain_error("'" + word + "' is not embedded in '" + text + "'");
  }

  std::vector<std::size_t> best;
  std::vector<std::size_t> current;
  auto span_extra = [&](const std::vector<std::size_t>& p) { return p.back() - p.front() + 1 - word.size(); };
  auto better = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    const auto sa = span_extra(a), sb = span_extra(b);
    if (sa != sb) return sa < sb;
    if (a.front() != b.front()) return a.front() < b.front();
    return a < b;
  };
  auto search = [&](auto&& self, std::size_t from) -> void {
    if (current.size() == word.size()) {
      if (best.empty() || better(current, best)) best = current;
      return;
    }
    const char want = word[current.size()];
    for (std::size_t p = from; p < text.size(); ++p) {
      if (text[p] != want) continue;
      current.push_back(p);
      self(self, p + 1);
      current.pop_back();
    }
  };
  search(search, 0);

  WordFeatures f;
  f.positions = best;
  f.word_length = word.size();
  f.split_distance = span_extra(best);
  f.first_occurrence = best.front();
  std::size_t run = 1;
  f.max_sequence = 1;
  for (std::size_t i = 1; i < best.size(); ++i) {
    run = best[i] == best[i - 1] + 1 ? run + 1 : 1;
    f.max_sequence = std::max(f.max_sequence, run);
  }
  f.has_2x = challenge.bonus_position &&
             std::find(best.begin(), best.end(), *challenge.bonus_position) != best.end();
  f.dirty_word = dictionary.is_profane(word);
  return f;
}

std::vector<WordSelectionRecord> selection_rates(const std::vector<SessionReplay>& replays, const GeneratedLevel& level,
                                                 const Dictionary& dictionary) {
  const auto challenges = playable_challenges(level);
  std::vector<std::map<std::string, std::size_t>> counts(challenges.size());
  std::vector<std::size_t> totals(challenges.size(), 0);
  for (const auto& r : replays) {
    if (r.level_index != level.index) continue;
    for (const auto& [challenge_index, word] : r.solved) {
      if (challenge_index < 1 || challenge_index > challenges.size()) {
        throw TraceError("session " + r.session_id + " solved nonexistent challenge " + std::to_string(challenge_index));
      }
      ++counts[challenge_index - 1][word];
      ++totals[challenge_index - 1];
    }
  }

  std::vector<WordSelectionRecord> records;
  for (std::size_t c = 0; c < challenges.size(); ++c) {
    if (totals[c] == 0) continue;
    const auto report = reachable_words(challenges[c].word, dictionary);
    for (const auto& [word, n] : counts[c]) {
      if (!report.is_reachable(word)) {
        throw TraceError("level " + std::to_string(level.index) + " challenge " + std::to_string(c + 1) +
                         ": solved word '" + word + "' cannot be reached from '" + challenges[c].word + "'");
      }
    }
    for (const auto& word : report.reachable) {
      WordSelectionRecord rec;
      rec.level_index = level.index;
      rec.challenge_index = c + 1;
      rec.word = word;
      const auto hit = counts[c].find(word);
      rec.solves = hit == counts[c].end() ? 0 : hit->second;
      rec.selection_rate = static_cast<double>(rec.solves) / static_cast<double>(totals[c]);
      rec.features = extract_word_features(challenges[c], word, dictionary);
      records.push_back(std::move(rec));
    }
  }
  return records;
}

RegressionModel level_score_model(const DifficultyCurve& curve, const std::vector<GenerationParams>& schedule) {
  std::vector<std::vector<double>> rows;
  std::vector<double> response;
  for (const auto& point : curve.points) {
    if (point.level_index < 1 || point.level_index > schedule.size()) continue;
    const auto& p = schedule[point.level_index - 1];
    rows.push_back({static_cast<double>(p.corpus_freq.min_rank), static_cast<double>(p.max_seq),
                    static_cast<double>(p.target_length), static_cast<double>(p.num_2x),
                    static_cast<double>(*std::min_element(p.source_words.begin(), p.source_words.end()))});
    response.push_back(point.mean_normalized_score);
  }
  if (rows.size() < 7) {
    throw RegressionError("level-score model needs at least 7 levels with outcomes, got " + std::to_string(rows.size()));
  }
  return fit_ols(rows, response, kLevelModelFeatures);
}

RegressionModel word_choice_model(const std::vector<WordSelectionRecord>& records) {
  if (records.size() < 50) {
    throw RegressionError("word-choice model needs at least 50 records, got " + std::to_string(records.size()));
  }
  std::vector<std::vector<double>> all_rows;
  std::vector<double> response;
  for (const auto& r : records) {
    const auto& f = r.features;
    all_rows.push_back({static_cast<double>(f.word_length), static_cast<double>(f.max_sequence),
                        f.has_2x ? 1.0 : 0.0, static_cast<double>(f.split_distance),
                        static_cast<double>(f.first_occurrence), f.dirty_word ? 1.0 : 0.0});
    response.push_back(r.selection_rate);
  }

  std::vector<std::size_t> keep;
  std::vector<std::string> names;
  std::vector<std::string> dropped;
  for (std::size_t j = 0; j < kWordModelFeatures.size(); ++j) {
    const bool constant = std::all_of(all_rows.begin(), all_rows.end(),
                                      [&](const std::vector<double>& row) { return row[j] == all_rows[0][j]; });
    if (constant) {
      dropped.push_back(kWordModelFeatures[j]);
    } else {
      keep.push_back(j);
      names.push_back(kWordModelFeatures[j]);
    }
  }
  std::vector<std::vector<double>> rows;
  for (const auto& full : all_rows) {
    std::vector<double> row;
    for (auto j : keep) row.push_back(full[j]);
    rows.push_back(std::move(row));
  }
  auto model = fit_ols(rows, response, names);
  model.dropped_features = std::move(dropped);
  return model;
}

AnalysisReport analyze(const std::vector<GeneratedLevel>& levels, const TraceParseResult& traces,
                       const Dictionary& dictionary) {
  AnalysisReport report;
  report.diagnostics = traces.diagnostics;

  std::map<std::size_t, const GeneratedLevel*> by_index;
  for (const auto& l : levels) by_index[l.index] = &l;
  std::map<std::size_t, int> max_scores;
  std::map<std::size_t, std::vector<SessionReplay>> replays_by_level;

  for (const auto& [id, events] : group_sessions(traces.events)) {
    ++report.sessions_total;
    const auto level_it = by_index.find(events.front().level_index);
    if (level_it == by_index.end()) {
      report.diagnostics.push_back({0, id, "unknown level " + std::to_string(events.front().level_index)});
      continue;
    }
    try {
      auto replay = replay_session(events, *level_it->second, dictionary);
      ++report.sessions_replayed;
      if (replay.outcome != ReplayOutcome::Abandoned) {
        auto [ms, inserted] = max_scores.try_emplace(replay.level_index, 0);
        if (inserted) ms->second = max_level_score(*level_it->second, dictionary);
        const double normalized = ms->second > 0 ? static_cast<double>(replay.total_score) / ms->second : 0.0;
        report.outcomes.push_back({replay.level_index, replay.player_id, replay.session_id, normalized});
      }
      replays_by_level[replay.level_index].push_back(std::move(replay));
    } catch (const TraceError& err) {
      report.diagnostics.push_back({0, id, err.what()});
    }
  }

  std::vector<std::size_t> expected;
  for (const auto& [index, _] : by_index) expected.push_back(index);
  report.curve = difficulty_curve(report.outcomes, expected);

  for (const auto& [index, replays] : replays_by_level) {
    try {
      auto records = selection_rates(replays, *by_index.at(index), dictionary);
      report.records.insert(report.records.end(), records.begin(), records.end());
    } catch (const TraceError& err) {
      report.diagnostics.push_back({0, "", err.what()});
    }
  }

  std::vector<GenerationParams> schedule(by_index.empty() ? 0 : by_index.rbegin()->first);
  for (const auto& [index, level] : by_index) schedule[index - 1] = level->params;
  try {
    report.level_model = level_score_model(report.curve, schedule);
  } catch (const RegressionError& err) {
    report.level_model_error = err.what();
  }
  try {
    report.word_model = word_choice_model(report.records);
  } catch (const RegressionError& err) {
    report.word_model_error = err.what();
  }
  return report;
}

namespace {

json model_to_json(const std::optional<RegressionModel>& model, const std::string& error) {
  if (!model) return json{{"error", error}};
  json coefficients = json::object();
  json errors = json::object();
  coefficients["intercept"] = model->intercept();
  errors["intercept"] = model->standard_errors.at(0);
  for (std::size_t j = 0; j < model->feature_names.size(); ++j) {
    coefficients[model->feature_names[j]] = model->coefficients[j + 1];
    errors[model->feature_names[j]] = model->standard_errors[j + 1];
  }
  return json{{"features", model->feature_names},
              {"coefficients", coefficients},
              {"standardErrors", errors},
              {"rSquared", model->r_squared},
              {"rSquaredPercent", model->r_squared * 100.0},
              {"observations", model->observations},
              {"droppedFeatures", model->dropped_features}};
}

}  // namespace

json report_to_json(const AnalysisReport& report) {
  json curve = json::array();
  for (const auto& p : report.curve.points) {
    curve.push_back({{"levelIndex", p.level_index}, {"meanNormalizedScore", p.mean_normalized_score},
                     {"sessions", p.sessions}});
  }
  json table = json::array();
  for (const auto& r : report.records) {
    const auto& f = r.features;
    table.push_back({{"levelIndex", r.level_index},
                     {"challengeIndex", r.challenge_index},
                     {"word", r.word},
                     {"selectionRate", r.selection_rate},
                     {"solves", r.solves},
                     {"wordLength", f.word_length},
                     {"maxSequence", f.max_sequence},
                     {"has2X", f.has_2x ? 1 : 0},
                     {"splitDistance", f.split_distance},
                     {"firstOccurrence", f.first_occurrence},
                     {"dirtyWord", f.dirty_word ? 1 : 0}});
  }
  json diagnostics = json::array();
  for (const auto& d : report.diagnostics) {
    diagnostics.push_back({{"line", d.line}, {"sessionId", d.session_id}, {"message", d.message}});
  }
  return json{{"sessions", {{"total", report.sessions_total}, {"replayed", report.sessions_replayed},
                            {"scored", report.outcomes.size()}}},
              {"difficultyCurve", curve},
              {"missingLevels", report.curve.missing_levels},
              {"levelScoreModel", model_to_json(report.level_model, report.level_model_error)},
              {"wordChoiceModel", model_to_json(report.word_model, report.word_model_error)},
              {"wordSelections", table},
              {"diagnostics", diagnostics}};
}

std::string report_summary(const AnalysisReport& report) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(4);
  out << "sessions: " << report.sessions_total << " total, " << report.sessions_replayed << " replayed, "
      << report.outcomes.size() << " scored\n\n";
  out << "difficulty curve (mean normalized score per level)\n";
  for (const auto& p : report.curve.points) {
    out << "  level " << (p.level_index < 10 ? " " : "") << p.level_index << "  " << p.mean_normalized_score << "  (n="
        << p.sessions << ")\n";
  }
  if (!report.curve.missing_levels.empty()) {
    out << "  no outcomes for levels:";
    for (auto l : report.curve.missing_levels) out << ' ' << l;
    out << '\n';
  }
  auto print_model = [&](const char* title, const std::optional<RegressionModel>& m, const std::string& error) {
    out << '\n' << title << '\n';
    if (!m) {
      out << "  not fitted: " << error << '\n';
      return;
    }
    out << "  R^2 = " << m->r_squared << " (" << m->r_squared * 100.0 << "%), n = " << m->observations << '\n';
    out << "  intercept        " << m->intercept() << '\n';
    for (std::size_t j = 0; j < m->feature_names.size(); ++j) {
      out << "  " << m->feature_names[j] << std::string(17 - std::min<std::size_t>(16, m->feature_names[j].size()), ' ')
          << m->coefficients[j + 1] << "  (se " << m->standard_errors[j + 1] << ")\n";
    }
    for (const auto& d : m->dropped_features) out << "  " << d << " dropped (constant)\n";
  };
  print_model("normalizedScore ~ min(corpusFreq) + maxSeq + targetLength + num2X + min(sourceWord)", report.level_model,
              report.level_model_error);
  print_model("selectionRate ~ wordLength + maxSequence + has2X + splitDistance + firstOccurrence + dirtyWord",
              report.word_model, report.word_model_error);
  if (!report.diagnostics.empty()) out << '\n' << report.diagnostics.size() << " diagnostics (see report JSON)\n";
  return out.str();
}

}  // namespace elim
