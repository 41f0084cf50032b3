#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "elimination/app.hpp"
#include "elimination/level_io.hpp"

namespace elim {

namespace fs = std::filesystem;

namespace {

void render(const ChallengeState& state, std::ostream& out) {
  out << "\nchallenge " << state.challenge_number() << "/" << kChallengesPerLevel << "  ("
      << std::fixed << std::setprecision(1) << (state.budget_ms() - static_cast<double>(state.elapsed_ms())) / 1000.0
      << " s left)\n  ";
  const auto& word = state.original();
  for (std::size_t i = 0; i < word.size(); ++i) {
    const bool bonus = state.bonus_position() == i;
    out << (state.is_eliminated(i) ? '.' : word[i]) << (bonus && !state.is_eliminated(i) ? '*' : ' ') << ' ';
  }
  out << "\n  ";
  for (std::size_t i = 0; i < word.size(); ++i) out << std::left << std::setw(3) << i;
  out << std::right << '\n';
}

enum class CommandKind { Remove, Quit, Invalid };

struct Command {
  CommandKind kind = CommandKind::Invalid;
  std::size_t index = 0;
};

Command parse_command(const std::string& line) {
  std::istringstream in(line);
  std::string head;
  if (!(in >> head)) return {};
  if (head == "q" || head == "quit") return {CommandKind::Quit};
  if (head == "r" || head == "remove") {
    if (!(in >> head)) return {};
  }
  std::size_t used = 0;
  try {
    const auto value = std::stoul(head, &used);
    std::string rest;
    if (used != head.size() || (in >> rest)) return {};
    return {CommandKind::Remove, value};
  } catch (const std::exception&) {
    return {};
  }
}

}  // namespace

int cmd_play(const AppConfig& config, const PlayOptions& options, std::istream& in, std::ostream& out, Clock& clock) {
  std::optional<Dictionary> loaded;
  GeneratedLevel level;
  try {
    loaded.emplace(load_dictionary(config));
    level = read_level(config.levels_dir / level_file_name(options.level_index));
  } catch (const std::exception& err) {
    out << "error: " << err.what() << '\n';
    return 1;
  }

  const Dictionary& dictionary = *loaded;
  LevelSession session(level);
  std::vector<PlaytraceEvent> trace;
  std::int64_t charged = clock.now_ms();
  const std::string session_id =
      "play-" + options.player_id + "-L" + std::to_string(level.index) + "-" + std::to_string(charged);
  auto record = [&](EventKind kind, std::size_t challenge, std::int64_t ts) -> PlaytraceEvent& {
    PlaytraceEvent e;
    e.session_id = session_id;
    e.player_id = options.player_id;
    e.level_index = level.index;
    e.challenge_index = challenge;
    e.kind = kind;
    e.timestamp_ms = ts;
    trace.push_back(std::move(e));
    return trace.back();
  };
  // Charges the time since the last input against the running challenge.
  auto tick = [&] {
    const std::int64_t ts = std::max(charged, clock.now_ms());
    session.apply(TickEvent{ts - charged}, dictionary);
    charged = ts;
    return ts;
  };

  out << "level " << level.index << ": remove letters by index; the board solves itself when a word remains.\n"
      << "commands: <index> | remove <index> | quit\n";
  std::size_t started = 0;
  while (!session.ended()) {
    const auto number = static_cast<std::size_t>(session.current().challenge_number());
    if (started != number) {
      started = number;
      record(EventKind::Start, number, charged);
    }
    render(session.current(), out);
    out << "> " << std::flush;

    std::string line;
    const bool got = static_cast<bool>(std::getline(in, line));
    const std::int64_t ts = tick();
    if (session.ended()) {
      record(EventKind::Timeout, number, ts);
      out << "time is up on challenge " << number << ".\n";
      break;
    }
    const Command cmd = got ? parse_command(line) : Command{CommandKind::Quit};
    if (cmd.kind == CommandKind::Quit) break;
    if (cmd.kind == CommandKind::Invalid) {
      out << "enter a letter index, 'remove <index>' or 'quit'\n";
      continue;
    }
    try {
      session.apply(EliminateEvent{cmd.index}, dictionary);
    } catch (const RuleViolation& violation) {
      out << "not allowed: " << violation.what() << '\n';
      continue;
    }
    record(EventKind::Eliminate, number, ts).original_index = cmd.index;
    const ChallengeState& played = session.states()[number - 1];
    if (played.status() == ChallengeStatus::Solved) {
      auto& solve = record(EventKind::Solve, number, ts);
      solve.word = played.solved_word();
      solve.score = played.score();
      out << "solved " << played.solved_word() << " for " << played.score() << " points\n";
    }
  }

  const fs::path file = options.trace_file.value_or(config.traces_dir / "play.jsonl");
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream log(file, std::ios::binary | std::ios::app);
  if (!log) {
    out << "error: cannot append to " << file.string() << '\n';
    return 1;
  }
  write_traces(log, trace);

  out << "\nscore " << session.total_score();
  switch (session.outcome()) {
    case SessionOutcome::Completed: out << ", level complete"; break;
    case SessionOutcome::Expired: out << ", expired on challenge " << *session.expired_at(); break;
    case SessionOutcome::Running: out << ", session abandoned"; break;
  }
  out << '\n';
  if (session.ended() && level.index < kLevelCount) out << "level " << level.index + 1 << " unlocked\n";
  out << "trace appended to " << file.string() << '\n';
  return 0;
}

}  // namespace elim
