#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "oracles.hpp"

#include "elimination/fi2pop.hpp"
#include "elimination/generation.hpp"
#include "elimination/level_io.hpp"
#include "elimination/schedule.hpp"

using namespace elim;

namespace {

const Dictionary& shipped() {
  static const Dictionary dict = [] {
    auto d = Dictionary::load(oracle::data_file("words.txt"));
    d.load_profanity(oracle::data_file("profanity.txt"));
    return d;
  }();
  return dict;
}

GenerationParams params(std::vector<std::size_t> sources, std::size_t tl, std::size_t max_seq, std::size_t num_2x,
                        RankWindow window = {1, 4000}) {
  GenerationParams p;
  p.corpus_freq = window;
  p.source_words = std::move(sources);
  p.target_length = tl;
  p.max_seq = max_seq;
  p.num_2x = num_2x;
  return p;
}

Chromosome chromosome(std::vector<std::uint32_t> sources, std::vector<std::uint32_t> mix) {
  return Chromosome{std::move(sources), std::move(mix)};
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(params({3, 3}, 5, 4, 3).validate());
  CHECK_THROWS_AS(params({3}, 5, 4, 3).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params({3, 3, 3, 3}, 9, 4, 3).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params({2, 3}, 5, 4, 3).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params({3, 5}, 4, 4, 3).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params({3, 3}, 5, 0, 3).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params({3, 3}, 5, 4, 11).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params({3, 3}, 5, 4, 1, {0, 10}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params({3, 3}, 5, 4, 1, {10, 9}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params({8, 8}, 17, 4, 1).validate(), std::invalid_argument);
}

TEST_CASE("random chromosome has one gene per source and per letter") {
  Rng rng(3);
  const auto c = Chromosome::random(params({3, 4, 4}, 10, 3, 1), rng, 100);
  CHECK(c.source_genes.size() == 3);
  CHECK(c.mix_genes.size() == 11);
  CHECK(c.size() == 14);
  for (auto g : c.mix_genes) CHECK(g < 100);
}

TEST_CASE("decoding picks candidates modulo their count") {
  const auto dict = Dictionary::from_words(std::vector<std::string>{"cat", "dog", "bird", "cow"});
  const CorpusSlice slice(dict, 1, 4);
  const auto p = params({3, 4}, 7, 3, 0, {1, 4});
  CHECK(decode_sources(chromosome({0, 0}, {}), p, slice) == std::vector<std::string>{"CAT", "BIRD"});
  CHECK(decode_sources(chromosome({4, 7}, {}), p, slice) == std::vector<std::string>{"DOG", "BIRD"});
}

TEST_CASE("decoding advances past a word already chosen") {
  const auto dict = Dictionary::from_words(std::vector<std::string>{"cat", "dog"});
  const CorpusSlice slice(dict, 1, 2);
  const auto p = params({3, 3}, 6, 3, 0, {1, 2});
  CHECK(decode_sources(chromosome({0, 0}, {}), p, slice) == std::vector<std::string>{"CAT", "DOG"});
  CHECK(decode_sources(chromosome({1, 3}, {}), p, slice) == std::vector<std::string>{"DOG", "CAT"});
}

TEST_CASE("decoding fails without enough candidates") {
  const auto dict = Dictionary::from_words(std::vector<std::string>{"cat", "bird"});
  const CorpusSlice slice(dict, 1, 2);
  CHECK_THROWS_AS(decode_sources(chromosome({0, 0}, {}), params({3, 3}, 6, 3, 0, {1, 2}), slice), DecodeError);
  CHECK_THROWS_AS(decode_sources(chromosome({0, 0}, {}), params({3, 5}, 6, 3, 0, {1, 2}), slice), DecodeError);
  CHECK_THROWS_AS(decode_sources(chromosome({0}, {}), params({3, 4}, 6, 3, 0, {1, 2}), slice), DecodeError);
}

TEST_CASE("mixing interleaves source letters") {
  const std::vector<std::string> cat_dog{"CAT", "DOG"};
  CHECK(mix_sources(chromosome({}, {0, 1, 0, 0, 1, 1}), cat_dog) == "CDATOG");
  CHECK(mix_sources(chromosome({}, {0, 0, 0, 0, 0, 0, 0}), {"CAR", "COOL"}) == "CARCOOL");
  CHECK(mix_sources(chromosome({}, {5, 9, 2}), {"DOG"}) == "DOG");
  // Once a word is exhausted the remaining genes index the active ones only.
  CHECK(mix_sources(chromosome({}, {0, 0, 0, 7, 7, 7}), cat_dog) == "CATDOG");
}

TEST_CASE("mixing preserves every source as a subsequence") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> words{oracle::random_string(rng, 3 + rng() % 3), oracle::random_string(rng, 3 + rng() % 3),
                                   oracle::random_string(rng, 3 + rng() % 3)};
    Chromosome c;
    for (std::size_t i = 0; i < 15; ++i) c.mix_genes.push_back(static_cast<std::uint32_t>(rng() % 1000));
    const auto mixed = mix_sources(c, words);
    CHECK(mixed.size() == words[0].size() + words[1].size() + words[2].size());
    for (const auto& w : words) CHECK(is_subsequence(w, mixed));
  }
}

TEST_CASE("greedy reduction") {
  CHECK(greedy_reduce("CARCOOL", {"CAR", "COOL"}, 6) == "CAROOL");
  CHECK(greedy_reduce("CDATOG", {"CAT", "DOG"}, 5) == "CDATOG");
  CHECK(greedy_reduce("CDATOG", {"CAT", "DOG"}, 6) == "CDATOG");
  CHECK(greedy_reduce("AABB", {"AB"}, 1) == "AB");
}

TEST_CASE("greedy reduction stops at a minimal supersequence") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> words{oracle::random_string(rng, 3, "ABCD"), oracle::random_string(rng, 4, "ABCD")};
    Chromosome c;
    for (std::size_t i = 0; i < 7; ++i) c.mix_genes.push_back(static_cast<std::uint32_t>(rng() % 2));
    const auto mixed = mix_sources(c, words);
    const auto reduced = greedy_reduce(mixed, words, 4);
    CHECK(is_subsequence(reduced, mixed));
    for (const auto& w : words) CHECK(is_subsequence(w, reduced));
    if (reduced.size() > 4) {
      for (std::size_t i = 0; i < reduced.size(); ++i) {
        auto shorter = reduced;
        shorter.erase(i, 1);
        CHECK_FALSE((is_subsequence(words[0], shorter) && is_subsequence(words[1], shorter)));
      }
    }
  }
}

TEST_CASE("length constraint") {
  for (std::size_t len = 0; len <= 7; ++len) CHECK(constraint_score(len, 7) == 1.0);
  CHECK(constraint_score(8, 7) == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-15));
  CHECK(std::abs(constraint_score(8, 7) - (1.0 - std::log(2.0))) < 1e-12);
  double prev = 1.0;
  for (std::size_t len = 8; len < 30; ++len) {
    CHECK(constraint_score(len, 7) < prev);
    prev = constraint_score(len, 7);
  }
}

TEST_CASE("fitness from counts") {
  CHECK(fitness_from_counts(0, 3, 0, 2) == doctest::Approx(1.0));
  CHECK(fitness_from_counts(3, 3, 2, 2) == doctest::Approx(0.01 / 1.21));
  CHECK(fitness_from_counts(0, 0, 0, 0) == doctest::Approx(1.0));
  CHECK(fitness_from_counts(1, 2, 0, 0) == doctest::Approx(0.6 * 1.1 / 1.21));
}

TEST_CASE("fitness on HATDEL matches a direct recount") {
  std::vector<std::string> words{"hate", "hade", "ate", "tel", "hat", "del"};
  const auto dict = Dictionary::from_words(words);
  std::set<std::string> upper;
  for (const auto& w : words) upper.insert(*normalize_word(w));
  FitnessBreakdown b;
  const double f = fitness_score("HATDEL", 3, dict, &b);
  // Short: ATE, DEL, HAT, TEL (DEL and HAT contiguous); Long: HADE, HATE (neither).
  CHECK(b.short_count == 4);
  CHECK(b.e == 2);
  CHECK(b.long_count == 2);
  CHECK(b.v == 0);
  CHECK(std::abs(f - oracle::fitness("HATDEL", 3, upper)) < 1e-12);
  CHECK(std::abs(f - 0.6 * 1.1 / 1.21) < 1e-12);
}

TEST_CASE("fitness agrees with brute force on random mini dictionaries") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const auto words = oracle::random_words(rng, 50 + rng() % 450);
    const auto dict = Dictionary::from_words(words);
    const auto word = oracle::random_string(rng, 4 + rng() % 7);
    const std::size_t max_seq = 2 + rng() % 3;
    CHECK(std::abs(fitness_score(word, max_seq, dict) - oracle::fitness(word, max_seq, oracle::as_set(words))) < 1e-12);
  }
}

TEST_CASE("leftmost embedding") {
  CHECK(leftmost_embedding("DOG", "CDATOG") == std::vector<std::size_t>{1, 4, 5});
  CHECK(leftmost_embedding("AA", "ABA") == std::vector<std::size_t>{0, 2});
  CHECK(leftmost_embedding("GOD", "CDATOG").empty());
}

TEST_CASE("evaluation marks feasibility") {
  const auto& dict = shipped();
  const auto p = params({3, 3}, 5, 4, 0);
  const CorpusSlice slice(dict, 1, 4000);
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    const auto c = Chromosome::random(p, rng, 1u << 24);
    const auto r = evaluate(c, p, slice, dict);
    for (const auto& s : r.sources) CHECK(is_subsequence(s, r.challenge_word));
    const bool expected = r.challenge_word.size() <= 5 && !dict.contains(r.challenge_word) &&
                          dict.embedded_words(r.challenge_word).size() >= 2;
    CHECK(r.feasible == expected);
    if (!r.feasible && r.constraint < 1.0) CHECK(r.fitness == 0.0);
  }
}

TEST_CASE("two-population search keeps its size and sorts by feasibility") {
  const auto& dict = shipped();
  const auto p = params({4, 5}, 8, 3, 0);
  EvolutionConfig cfg;
  cfg.population = 40;
  cfg.max_generations = 15;
  cfg.stop_at_max_fitness = false;
  Fi2PopSearch search(p, dict, 77, cfg);
  for (int g = 0; g < 15; ++g) {
    CHECK(search.feasible().size() + search.infeasible().size() == 40);
    for (const auto& ind : search.feasible()) CHECK(ind.eval.feasible);
    for (const auto& ind : search.infeasible()) CHECK_FALSE(ind.eval.feasible);
    search.step();
  }
  CHECK(search.generation() == 15);
  CHECK(search.done());
  REQUIRE(search.best_feasible() != nullptr);
  for (const auto& ind : search.feasible()) CHECK(ind.eval.fitness <= search.best_feasible()->eval.fitness);
}

TEST_CASE("best feasible fitness never decreases") {
  const auto& dict = shipped();
  EvolutionConfig cfg;
  cfg.population = 30;
  cfg.max_generations = 20;
  cfg.stop_at_max_fitness = false;
  Fi2PopSearch search(params({3, 3, 4}, 9, 3, 0), dict, 5, cfg);
  double best = -1;
  while (!search.done()) {
    if (search.best_feasible()) {
      CHECK(search.best_feasible()->eval.fitness >= best);
      best = search.best_feasible()->eval.fitness;
    }
    search.step();
  }
}

TEST_CASE("evolved challenge satisfies its parameters") {
  const auto& dict = shipped();
  const auto p = params({4, 4}, 7, 3, 0, {201, 5201});
  const auto c = evolve_challenge(p, dict, 123);
  CHECK(validate_challenge(c, p, dict).empty());
  CHECK(c.challenge_word.size() <= 7);
  CHECK(c.constraint == 1.0);
  for (const auto& s : c.sources) {
    CHECK(s.positions == leftmost_embedding(s.word, c.challenge_word));
    CHECK_FALSE(dict.is_profane(s.word));
  }
}

TEST_CASE("an impossible target fails with the best infeasible candidate") {
  const auto dict = Dictionary::from_words(std::vector<std::string>{"abc", "def", "ghi", "jkl"});
  EvolutionConfig cfg;
  cfg.population = 10;
  cfg.max_generations = 5;
  try {
    evolve_challenge(params({3, 3}, 3, 3, 0, {1, 4}), dict, 1, cfg);
    FAIL("expected GenerationFailure");
  } catch (const GenerationFailure& err) {
    CHECK(err.best_infeasible().challenge_word.size() == 6);
    CHECK(err.best_infeasible().constraint < 1.0);
  }
}

TEST_CASE("generation is deterministic and independent of thread count") {
  const auto& dict = shipped();
  const auto schedule = default_schedule();
  EvolutionConfig one;
  one.threads = 1;
  EvolutionConfig many;
  many.threads = 4;
  const auto a = generate_level(7, schedule, dict, 99, one);
  const auto b = generate_level(7, schedule, dict, 99, many);
  CHECK(a == b);
  CHECK(serialize_level(a) == serialize_level(b));
  const auto c = generate_level(7, schedule, dict, 100, one);
  CHECK(serialize_level(a) != serialize_level(c));
}

TEST_CASE("generated level has exactly num2X bonus letters on source letters") {
  const auto& dict = shipped();
  const auto schedule = default_schedule();
  for (std::size_t index : {1, 8, 14}) {
    const auto level = generate_level(index, schedule, dict, 3);
    CHECK(validate_level(level, dict).empty());
    std::size_t bonuses = 0;
    for (const auto& c : level.challenges) {
      if (!c.bonus_position) continue;
      ++bonuses;
      bool on_source = false;
      for (const auto& s : c.sources) {
        on_source |= std::find(s.positions.begin(), s.positions.end(), *c.bonus_position) != s.positions.end();
      }
      CHECK(on_source);
    }
    CHECK(bonuses == schedule[index - 1].num_2x);
  }
}

TEST_CASE("bonus sits on the rarest letter of a source word") {
  const auto& dict = shipped();
  const auto level = generate_level(1, default_schedule(), dict, 8);
  const auto& freq = dict.letter_frequency();
  for (const auto& c : level.challenges) {
    if (!c.bonus_position) continue;
    const char letter = c.challenge_word[*c.bonus_position];
    bool rarest_somewhere = false;
    for (const auto& s : c.sources) {
      auto rarest = *std::min_element(s.word.begin(), s.word.end(), [&](char x, char y) {
        return freq[x - 'A'] != freq[y - 'A'] ? freq[x - 'A'] < freq[y - 'A'] : x < y;
      });
      rarest_somewhere |= rarest == letter;
    }
    CHECK(rarest_somewhere);
  }
}

TEST_CASE("validation reports broken challenges") {
  const auto& dict = shipped();
  const auto p = params({3, 3}, 6, 4, 0);
  GeneratedChallenge c;
  c.challenge_word = "CDATOG";
  c.sources = {{"CAT", {0, 2, 3}}, {"DOG", {1, 4, 5}}};
  c.constraint = 1.0;
  CHECK(validate_challenge(c, p, dict).empty());
  auto bad = c;
  bad.sources[1].word = "GOD";
  CHECK_FALSE(validate_challenge(bad, p, dict).empty());
  bad = c;
  bad.challenge_word = "CAT";
  CHECK_FALSE(validate_challenge(bad, p, dict).empty());
  bad = c;
  bad.challenge_word = "CDATOGXX";
  CHECK_FALSE(validate_challenge(bad, params({3, 3}, 6, 4, 0), dict).empty());
}

TEST_CASE("default schedule is a saw-tooth") {
  const auto schedule = default_schedule();
  REQUIRE(schedule.size() == 30);
  for (const auto& p : schedule) CHECK_NOTHROW(p.validate());
  for (std::size_t i = 1; i < 30; ++i) {
    const double prev = difficulty_proxy(schedule[i - 1]);
    const double cur = difficulty_proxy(schedule[i]);
    if (i % 5 == 0) {
      CHECK_MESSAGE(cur < prev, "level " << i + 1);
    } else {
      CHECK_MESSAGE(cur > prev, "level " << i + 1);
    }
  }
  for (std::size_t block = 1; block < 6; ++block) {
    CHECK(difficulty_proxy(schedule[5 * block]) >= difficulty_proxy(schedule[5 * (block - 1)]));
  }
}

TEST_CASE("difficulty proxy") {
  CHECK(difficulty_proxy(params({3, 3}, 5, 4, 3, {1, 4001})) == doctest::Approx(-2.0));
  CHECK(difficulty_proxy(params({3, 4, 4}, 10, 3, 1, {2601, 9601})) == doctest::Approx(8.6));
}

TEST_CASE("schedule file round trip and rejection") {
  const auto dir = std::filesystem::temp_directory_path() / "elim_schedule_test";
  std::filesystem::create_directories(dir);
  const auto file = dir / "schedule.json";
  save_schedule(default_schedule(), file);
  CHECK(load_schedule(file) == default_schedule());
  {
    std::ofstream out(file);
    out << "[{\"corpusFreq\": {\"minRank\": 1, \"maxRank\": 10}}]";
  }
  CHECK_THROWS(load_schedule(file));
  std::filesystem::remove_all(dir);
}

TEST_CASE("level files round trip byte for byte") {
  const auto& dict = shipped();
  const auto level = generate_level(3, default_schedule(), dict, 17);
  const auto text = serialize_level(level);
  const auto back = parse_level(text);
  CHECK(back == level);
  CHECK(serialize_level(back) == text);
  const auto doc = nlohmann::json::parse(text);
  CHECK(doc.contains("params"));
  CHECK(doc["params"].contains("corpusFreq"));
  CHECK(doc["challenges"].size() == 10);
  CHECK(doc["challenges"][0].contains("challengeWord"));
  CHECK(doc["challenges"][0].contains("bonusPosition"));
  CHECK(level_file_name(3) == "level_03.json");
  CHECK_THROWS(parse_level("{\"index\": 1}"));
  CHECK_THROWS(parse_level("not json"));
}
