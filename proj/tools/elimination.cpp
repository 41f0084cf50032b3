#include <iostream>

#include "CLI11.hpp"

#include "elimination/app.hpp"

namespace {

namespace fs = std::filesystem;

/// Data files shipped with the sources; used when ./data is absent.
fs::path default_data(const char* name) {
  const fs::path local = fs::path("data") / name;
  if (fs::exists(local)) return local;
  return fs::path(ELIMINATION_DATA_DIR) / name;
}

}  // namespace

int main(int argc, char** argv) {
  elim::AppConfig config;
  config.dictionary_path = default_data("words.txt");
  config.profanity_path = default_data("profanity.txt");

  CLI::App app{"Elimination: letter-removal word puzzles, bot play and analytics"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string schedule;
  app.add_option("--dict", config.dictionary_path, "Word list, one word per line in frequency order")
      ->envname("ELIM_DICT");
  app.add_option("--profanity", config.profanity_path, "Words never used as sources")->envname("ELIM_PROFANITY");
  app.add_option("--schedule", schedule, "JSON array of 30 level parameter sets")->envname("ELIM_SCHEDULE");
  app.add_option("--levels", config.levels_dir, "Directory of level files")->envname("ELIM_LEVELS_DIR");
  app.add_option("--traces-dir", config.traces_dir, "Directory of trace logs and reports")->envname("ELIM_TRACES_DIR");
  app.add_option("--seed", config.seed, "Base seed for generation and simulation")->envname("ELIM_SEED");

  auto* generate = app.add_subcommand("generate", "Evolve all levels and write them with a manifest");
  elim::EvolutionConfig evolution;
  generate->add_option("--threads", evolution.threads, "Worker threads (0 = all cores)");
  generate->add_option("--generations", evolution.max_generations, "Generation cap per challenge")
      ->check(CLI::PositiveNumber);
  generate->add_flag("!--full-search", evolution.stop_at_max_fitness,
                     "Run every generation instead of stopping at fitness 1");

  auto* play = app.add_subcommand("play", "Play a level in the terminal");
  elim::PlayOptions play_options;
  std::string play_trace;
  play->add_option("level", play_options.level_index, "Level number")->required()->check(CLI::Range(1, 30));
  play->add_option("--player", play_options.player_id, "Player id written to the trace");
  play->add_option("--trace", play_trace, "Trace file to append to (default <traces-dir>/play.jsonl)");

  auto* simulate = app.add_subcommand("simulate", "Let bots play every level and log their traces");
  std::vector<std::string> bots{"noisy-skill"};
  std::size_t runs = 10;
  double skill = 0.7;
  std::int64_t delay = 2000;
  std::string simulate_out;
  simulate->add_option("--bot", bots, "random, greedy-longest, greedy-shortest, noisy-skill or naive")
      ->check(CLI::IsMember({"random", "greedy-longest", "greedy-shortest", "noisy-skill", "naive"}));
  simulate->add_option("--runs", runs, "Sessions per bot and level")->check(CLI::PositiveNumber);
  simulate->add_option("--skill", skill, "Chance a noisy-skill bot plays the greedy pick")->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--delay", delay, "Milliseconds per letter removal")->check(CLI::NonNegativeNumber);
  simulate->add_option("--out", simulate_out, "Output file (default <traces-dir>/simulated.jsonl)");

  auto* analyze = app.add_subcommand("analyze", "Replay traces and fit the difficulty models");
  std::string analyze_traces, analyze_report;
  analyze->add_option("--traces", analyze_traces, "Trace file (default every .jsonl in the traces dir)");
  analyze->add_option("--report", analyze_report, "Report path (default <traces-dir>/report.json)");

  auto* serve = app.add_subcommand("serve", "Serve the JSON API for the web client");
  serve->add_option("--port", config.service_port, "TCP port")->envname("ELIM_PORT")->check(CLI::Range(1, 65535));

  CLI11_PARSE(app, argc, argv);
  if (!schedule.empty()) config.schedule_path = schedule;

  if (*generate) return elim::cmd_generate(config, std::cerr, evolution);
  if (*play) {
    if (!play_trace.empty()) play_options.trace_file = play_trace;
    elim::SystemClock clock;
    return elim::cmd_play(config, play_options, std::cin, std::cout, clock);
  }
  if (*simulate) {
    elim::SimulateOptions options;
    for (const auto& name : bots) {
      elim::BotPolicy policy;
      policy.kind = *elim::bot_kind_from_string(name);
      policy.skill = skill;
      policy.per_letter_delay_ms = delay;
      options.policies.push_back(policy);
    }
    options.runs = runs;
    if (!simulate_out.empty()) options.output = simulate_out;
    return elim::cmd_simulate(config, options, std::cerr);
  }
  if (*analyze) {
    elim::AnalyzeOptions options;
    if (!analyze_traces.empty()) options.traces = analyze_traces;
    if (!analyze_report.empty()) options.report = analyze_report;
    return elim::cmd_analyze(config, options, std::cout, std::cerr);
  }
  if (*serve) return elim::cmd_serve(config, std::cerr);
  return 0;
}
