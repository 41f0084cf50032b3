#include <algorithm>
#include <fstream>
#include <sstream>

#include "elimination/app.hpp"
#include "elimination/level_io.hpp"

namespace elim {

namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& file, const std::string& text) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw AppError("cannot write " + file.string());
  out << text;
}

std::vector<GeneratedLevel> require_levels(const AppConfig& config) {
  auto levels = read_levels(config.levels_dir);
  if (levels.empty()) throw AppError("no level files in " + config.levels_dir.string() + " (run generate first)");
  return levels;
}

}  // namespace

int cmd_generate(const AppConfig& config, std::ostream& log, const EvolutionConfig& evolution) {
  std::vector<fs::path> written;
  try {
    const Dictionary dictionary = load_dictionary(config);
    const auto schedule = load_schedule_or_default(config);
    fs::create_directories(config.levels_dir);
    for (std::size_t i = 1; i <= schedule.size(); ++i) {
      const auto level = generate_level(i, schedule, dictionary, config.seed, evolution);
      if (const auto problems = validate_level(level, dictionary); !problems.empty()) {
        throw AppError("generated level failed validation: " + problems.front());
      }
      const fs::path file = config.levels_dir / level_file_name(i);
      written.push_back(file);
      write_level(level, config.levels_dir);
      log << "level " << i << ":";
      for (const auto& c : level.challenges) log << ' ' << c.challenge_word;
      log << '\n';
    }
    const fs::path manifest = config.levels_dir / "manifest.json";
    written.push_back(manifest);
    write_text(manifest, make_manifest(config, schedule, dictionary).dump(2) + "\n");
    log << "wrote " << schedule.size() << " levels to " << config.levels_dir.string() << " (seed " << config.seed
        << ")\n";
    return 0;
  } catch (const std::exception& err) {
    for (const auto& f : written) {
      std::error_code ignored;
      fs::remove(f, ignored);
    }
    log << "error: " << err.what() << '\n';
    return 1;
  }
}

int cmd_simulate(const AppConfig& config, const SimulateOptions& options, std::ostream& log) {
  try {
    const Dictionary dictionary = load_dictionary(config);
    const auto levels = require_levels(config);
    if (options.policies.empty()) throw AppError("no bot policy given");
    const auto events = simulate_corpus(options.policies, levels, options.runs, config.seed, dictionary);
    const fs::path file = options.output.value_or(config.traces_dir / "simulated.jsonl");
    std::ostringstream text;
    write_traces(text, events);
    write_text(file, text.str());
    log << "simulated " << options.policies.size() * options.runs * levels.size() << " sessions (" << events.size()
        << " events) into " << file.string() << '\n';
    return 0;
  } catch (const std::exception& err) {
    log << "error: " << err.what() << '\n';
    return 1;
  }
}

int cmd_analyze(const AppConfig& config, const AnalyzeOptions& options, std::ostream& out, std::ostream& log) {
  try {
    const Dictionary dictionary = load_dictionary(config);
    const auto levels = require_levels(config);

    std::vector<fs::path> sources;
    if (options.traces) {
      if (!fs::exists(*options.traces)) throw AppError("trace file not found: " + options.traces->string());
      sources.push_back(*options.traces);
    } else if (fs::is_directory(config.traces_dir)) {
      for (const auto& entry : fs::directory_iterator(config.traces_dir)) {
        if (entry.path().extension() == ".jsonl") sources.push_back(entry.path());
      }
      std::sort(sources.begin(), sources.end());
    }
    std::stringstream all;
    for (const auto& file : sources) {
      std::ifstream in(file, std::ios::binary);
      all << in.rdbuf() << '\n';
    }
    const auto traces = parse_traces(all);
    if (traces.events.empty()) {
      throw AppError("no usable trace records to analyze" +
                     (sources.empty() ? std::string(" (no .jsonl files found)")
                                      : " in " + std::to_string(sources.size()) + " file(s)"));
    }

    const auto report = analyze(levels, traces, dictionary);
    const fs::path json_file = options.report.value_or(config.traces_dir / "report.json");
    fs::path text_file = json_file;
    text_file.replace_extension(".txt");
    const std::string summary = report_summary(report);
    write_text(json_file, report_to_json(report).dump(2) + "\n");
    write_text(text_file, summary);
    out << summary;
    log << "report written to " << json_file.string() << '\n';
    return 0;
  } catch (const std::exception& err) {
    log << "error: " << err.what() << '\n';
    return 1;
  }
}

}  // namespace elim
