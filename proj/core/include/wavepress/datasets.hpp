#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace wavepress {

// Tab-separated dataset files. Blank lines and lines starting with '#' are
// ignored. A first data line whose numeric/split field does not parse is
// taken as a column header and counted as malformed; later ones are errors.

struct ScoredPair {
  std::string first;
  std::string second;
  double score = 0.0;
};

/// `w1 \t w2 \t score`
struct WordSimDataset {
  std::string name;
  std::vector<ScoredPair> pairs;
  std::size_t malformed = 0;
};

/// `word \t category`
struct CategorizationDataset {
  std::string name;
  std::vector<std::pair<std::string, std::string>> items;
  std::size_t malformed = 0;

  std::size_t category_count() const;
};

/// `key1 \t key2 \t score`, keys referencing an embedding table.
struct PairIndexDataset {
  std::string name;
  std::vector<ScoredPair> pairs;
  std::size_t malformed = 0;
};

enum class Split { Train, Validation, Test };

struct LabeledItem {
  std::string key;
  std::string second_key;  // non-empty for sentence-pair tasks
  std::string label;
  Split split = Split::Train;

  bool is_pair() const noexcept { return !second_key.empty(); }
};

/// `key \t label \t split`, or `key1 \t key2 \t label \t split` for pair tasks.
/// Split names: train, validation (also val, dev), test.
struct LabeledDataset {
  std::string name;
  std::vector<LabeledItem> items;
  std::size_t malformed = 0;

  /// Sorted distinct labels.
  std::vector<std::string> classes() const;
};

WordSimDataset load_wordsim(const std::filesystem::path& path);
CategorizationDataset load_categorization(const std::filesystem::path& path);
PairIndexDataset load_pairs(const std::filesystem::path& path);
LabeledDataset load_labeled(const std::filesystem::path& path);

}  // namespace wavepress
