#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <ostream>
#include <string>
#include <vector>

#include "elimination/analytics.hpp"
#include "elimination/corpus.hpp"
#include "elimination/generation.hpp"
#include "elimination/simulation.hpp"

namespace httplib {
class Server;
}

namespace elim {

struct AppConfig {
  std::filesystem::path dictionary_path = "data/words.txt";
  std::filesystem::path profanity_path = "data/profanity.txt";
  std::optional<std::filesystem::path> schedule_path;
  std::filesystem::path levels_dir = "levels";
  std::filesystem::path traces_dir = "traces";
  int service_port = 8080;
  std::uint64_t seed = 1;
};

class AppError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Loads the word list and (if the file exists) the profanity list.
Dictionary load_dictionary(const AppConfig& config);
std::vector<GenerationParams> load_schedule_or_default(const AppConfig& config);

nlohmann::json make_manifest(const AppConfig& config, const std::vector<GenerationParams>& schedule,
                             const Dictionary& dictionary);

/// Writes level_01.json .. level_30.json and manifest.json. On failure every
/// file written by this call is removed again. Returns the process exit code.
int cmd_generate(const AppConfig& config, std::ostream& log, const EvolutionConfig& evolution = {});

struct SimulateOptions {
  std::vector<BotPolicy> policies;
  std::size_t runs = 1;
  std::optional<std::filesystem::path> output;  // default: <traces>/simulated.jsonl
};
int cmd_simulate(const AppConfig& config, const SimulateOptions& options, std::ostream& log);

struct AnalyzeOptions {
  std::optional<std::filesystem::path> traces;  // file; default: every .jsonl in the traces dir
  std::optional<std::filesystem::path> report;  // default: <traces>/report.json (+ report.txt)
};
int cmd_analyze(const AppConfig& config, const AnalyzeOptions& options, std::ostream& out, std::ostream& log);

/// Wall-clock source for interactive play, in epoch milliseconds.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::int64_t now_ms() = 0;
};

class SystemClock : public Clock {
 public:
  std::int64_t now_ms() override;
};

struct PlayOptions {
  std::size_t level_index = 1;
  std::string player_id = "terminal";
  std::optional<std::filesystem::path> trace_file;  // default: <traces>/play.jsonl
};

/// Terminal session: shows the letters with their indices, reads one command
/// per line ("3", "remove 3", "quit") and appends the trace when the session
/// ends or is abandoned.
int cmd_play(const AppConfig& config, const PlayOptions& options, std::istream& in, std::ostream& out, Clock& clock);

/// Everything the HTTP service reads. Level data is immutable after start.
class ServiceState {
 public:
  ServiceState(AppConfig config, Dictionary dictionary, std::vector<GeneratedLevel> levels);

  const AppConfig& config() const { return config_; }
  const Dictionary& dictionary() const { return dictionary_; }
  const GeneratedLevel* level(std::size_t index) const;
  const std::vector<GeneratedLevel>& levels() const { return levels_; }
  std::filesystem::path trace_file() const { return config_.traces_dir / "web.jsonl"; }

  /// Appends validated lines; serialized across request threads. Returns
  /// a session id already present in the log and appends nothing in that case.
  std::optional<std::string> append_traces(const std::vector<PlaytraceEvent>& events);

 private:
  AppConfig config_;
  Dictionary dictionary_;
  std::vector<GeneratedLevel> levels_;
  std::mutex trace_mutex_;
  std::optional<std::set<std::string>> logged_sessions_;
};

/// Registers the /api routes on `server`.
void install_routes(httplib::Server& server, ServiceState& state);

int cmd_serve(const AppConfig& config, std::ostream& log);

}  // namespace elim
