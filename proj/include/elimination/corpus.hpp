#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace elim {

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DictionaryOptions {
  std::size_t min_word_length = 3;
  /// Longest challenge word for which subsequence enumeration is allowed.
  std::size_t enumeration_cap = 16;
};

using LetterCounts = std::array<std::uint64_t, 26>;

/// True iff the letters of `needle` appear in `haystack` in order.
bool is_subsequence(std::string_view needle, std::string_view haystack);

/// Uppercases ASCII letters; returns nullopt if anything other than a letter
/// is present.
std::optional<std::string> normalize_word(std::string_view raw);

/// Frequency-ranked word list (rank 1 = most frequent) with a prefix tree
/// for membership and subsequence enumeration. Immutable once built.
class Dictionary {
 public:
  static Dictionary load(const std::filesystem::path& path, DictionaryOptions options = {});

  /// Builds from an in-memory list in rank order; invalid entries are skipped
  /// exactly as in `load`.
  static Dictionary from_words(std::span<const std::string> words, DictionaryOptions options = {});

  /// Replaces the profanity set. Entries are normalized; invalid ones ignored.
  void set_profanity(std::span<const std::string> words);
  void load_profanity(const std::filesystem::path& path);

  bool contains(std::string_view word) const { return rank(word).has_value(); }
  std::optional<std::size_t> rank(std::string_view word) const;
  const std::string& word_at_rank(std::size_t rank) const { return words_.at(rank - 1); }
  std::span<const std::string> words() const { return words_; }
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }

  /// Lines rejected during load (too short, non-letters, duplicates).
  std::size_t skipped() const { return skipped_; }
  const DictionaryOptions& options() const { return options_; }
  std::size_t min_word_length() const { return options_.min_word_length; }

  bool is_profane(std::string_view word) const;

  /// Per-letter occurrence counts over every entry.
  const LetterCounts& letter_frequency() const { return letter_counts_; }

  /// Every dictionary word that is a subsequence of `challenge`, sorted
  /// lexicographically. Throws CorpusError past the enumeration cap.
  std::vector<std::string> embedded_words(std::string_view challenge) const;

 private:
  struct Node {
    std::array<std::int32_t, 26> child;
    std::uint32_t rank = 0;  // 0: no word ends here
    Node() { child.fill(-1); }
  };

  explicit Dictionary(DictionaryOptions options);
  void add(std::string_view raw);
  std::int32_t find_node(std::string_view word) const;

  DictionaryOptions options_;
  std::vector<std::string> words_;
  std::vector<Node> nodes_;
  std::unordered_set<std::string> profanity_;
  LetterCounts letter_counts_{};
  std::size_t skipped_ = 0;
};

/// Rank window [min_rank, max_rank] over a dictionary. The dictionary must
/// outlive the slice.
class CorpusSlice {
 public:
  CorpusSlice(const Dictionary& dictionary, std::size_t min_rank, std::size_t max_rank);

  bool contains(std::string_view word) const;
  std::size_t min_rank() const { return min_rank_; }
  std::size_t max_rank() const { return max_rank_; }
  const Dictionary& dictionary() const { return *dictionary_; }

  /// Words of the given length inside the window, in rank order.
  std::span<const std::string_view> candidates(std::size_t length) const;

 private:
  const Dictionary* dictionary_;
  std::size_t min_rank_;
  std::size_t max_rank_;
  std::vector<std::vector<std::string_view>> by_length_;
};

}  // namespace elim
