#include "elimination/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

namespace elim {

namespace {

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot read word list: " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (auto tab = line.find('\t'); tab != std::string::npos) line.resize(tab);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    auto first = line.find_first_not_of(" \t");
    lines.push_back(first == std::string::npos ? std::string{} : line.substr(first));
  }
  return lines;
}

}  // namespace

bool is_subsequence(std::string_view needle, std::string_view haystack) {
  std::size_t i = 0;
  for (char c : haystack) {
    if (i == needle.size()) break;
    if (needle[i] == c) ++i;
  }
  return i == needle.size();
}

std::optional<std::string> normalize_word(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    if (c >= 'a' && c <= 'z') {
      out.push_back(static_cast<char>(c - 'a' + 'A'));
    } else if (c >= 'A' && c <= 'Z') {
      out.push_back(c);
    } else {
      return std::nullopt;
    }
  }
  return out;
}

Dictionary::Dictionary(DictionaryOptions options) : options_(options) { nodes_.emplace_back(); }

Dictionary Dictionary::load(const std::filesystem::path& path, DictionaryOptions options) {
  const auto lines = read_lines(path);
  return from_words(lines, options);
}

Dictionary Dictionary::from_words(std::span<const std::string> words, DictionaryOptions options) {
  Dictionary dict(options);
  for (const auto& w : words) {
    if (w.empty()) continue;
    dict.add(w);
  }
  if (dict.words_.empty()) throw CorpusError("word list has no usable entries");
  return dict;
}

void Dictionary::add(std::string_view raw) {
  auto word = normalize_word(raw);
  if (!word || word->size() < options_.min_word_length || contains(*word)) {
    ++skipped_;
    return;
  }
  std::int32_t node = 0;
  for (char c : *word) {
    const int letter = c - 'A';
    if (nodes_[node].child[letter] < 0) {
      nodes_[node].child[letter] = static_cast<std::int32_t>(nodes_.size());
      nodes_.emplace_back();
    }
    node = nodes_[node].child[letter];
    ++letter_counts_[letter];
  }
  words_.push_back(std::move(*word));
  nodes_[node].rank = static_cast<std::uint32_t>(words_.size());
}

std::int32_t Dictionary::find_node(std::string_view word) const {
  std::int32_t node = 0;
  for (char c : word) {
    if (c < 'A' || c > 'Z') return -1;
    node = nodes_[node].child[c - 'A'];
    if (node < 0) return -1;
  }
  return node;
}

std::optional<std::size_t> Dictionary::rank(std::string_view word) const {
  const auto node = find_node(word);
  if (node < 0 || nodes_[node].rank == 0) return std::nullopt;
  return nodes_[node].rank;
}

void Dictionary::set_profanity(std::span<const std::string> words) {
  profanity_.clear();
  for (const auto& w : words) {
    if (auto norm = normalize_word(w); norm && !norm->empty()) profanity_.insert(*norm);
  }
}

void Dictionary::load_profanity(const std::filesystem::path& path) {
  std::ifstream probe(path);
  if (!probe) throw CorpusError("cannot read profanity list: " + path.string());
  set_profanity(read_lines(path));
}

bool Dictionary::is_profane(std::string_view word) const {
  auto norm = normalize_word(word);
  return norm && profanity_.contains(*norm);
}

std::vector<std::string> Dictionary::embedded_words(std::string_view challenge) const {
  if (challenge.size() > options_.enumeration_cap) {
    throw CorpusError("challenge word '" + std::string(challenge) + "' exceeds enumeration cap of " +
                      std::to_string(options_.enumeration_cap));
  }
  const std::size_t n = challenge.size();
  // next[i][c]: first index >= i holding letter c, or n.
  std::vector<std::array<std::uint8_t, 26>> next(n + 1);
  next[n].fill(static_cast<std::uint8_t>(n));
  for (std::size_t i = n; i-- > 0;) {
    next[i] = next[i + 1];
    const char c = challenge[i];
    if (c < 'A' || c > 'Z') throw CorpusError("challenge word must be uppercase A-Z");
    next[i][c - 'A'] = static_cast<std::uint8_t>(i);
  }

  std::vector<std::string> out;
  std::string prefix;
  // Taking the earliest occurrence of each letter visits every distinct
  // subsequence exactly once, in lexicographic order.
  auto walk = [&](auto&& self, std::int32_t node, std::size_t pos) -> void {
    if (nodes_[node].rank != 0 && prefix.size() >= options_.min_word_length) out.push_back(prefix);
    for (int c = 0; c < 26; ++c) {
      const auto child = nodes_[node].child[c];
      if (child < 0) continue;
      const std::size_t at = next[pos][c];
      if (at >= n) continue;
      prefix.push_back(static_cast<char>('A' + c));
      self(self, child, at + 1);
      prefix.pop_back();
    }
  };
  walk(walk, 0, 0);
  return out;
}

CorpusSlice::CorpusSlice(const Dictionary& dictionary, std::size_t min_rank, std::size_t max_rank)
    : dictionary_(&dictionary), min_rank_(min_rank), max_rank_(max_rank) {
  if (min_rank < 1 || min_rank > max_rank || max_rank > dictionary.size()) {
    throw CorpusError("invalid rank window [" + std::to_string(min_rank) + ", " + std::to_string(max_rank) +
                      "] for dictionary of " + std::to_string(dictionary.size()) + " words");
  }
  for (std::size_t r = min_rank; r <= max_rank; ++r) {
    const std::string& w = dictionary.word_at_rank(r);
    if (by_length_.size() <= w.size()) by_length_.resize(w.size() + 1);
    by_length_[w.size()].push_back(w);
  }
}

bool CorpusSlice::contains(std::string_view word) const {
  const auto r = dictionary_->rank(word);
  return r && *r >= min_rank_ && *r <= max_rank_;
}

std::span<const std::string_view> CorpusSlice::candidates(std::size_t length) const {
  if (length >= by_length_.size()) return {};
  return by_length_[length];
}

}  // namespace elim
