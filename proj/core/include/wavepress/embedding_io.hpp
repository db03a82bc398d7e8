#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "wavepress/embedding.hpp"

namespace wavepress {

// ---------------------------------------------------------------------------
// Word vectors (GloVe / FastText text format)

struct WordVectorOptions {
  std::optional<std::size_t> expected_dim;
  /// When set, only tokens in this set are kept (after the usual checks).
  const std::unordered_set<std::string>* vocabulary = nullptr;
};

struct WordVectorFile {
  EmbeddingTable table;
  std::size_t skipped = 0;     // wrong arity or unparsable values
  std::size_t duplicates = 0;  // later occurrences of a token already seen
  bool had_header = false;
};

/// Whitespace-separated `token v1 .. vd` lines, with an optional leading
/// "N d" header. Malformed rows are skipped and counted.
WordVectorFile load_word_vectors(const std::filesystem::path& path,
                                 const WordVectorOptions& options = {});

// ---------------------------------------------------------------------------
// EMB1 binary matrix
//
//   "EMB1" | u32le N | u32le d | N*d float32le (row-major) | N keys, each '\n'-terminated

void save_matrix(const EmbeddingTable& table, const std::filesystem::path& path);
EmbeddingTable load_matrix(const std::filesystem::path& path);

bool has_emb1_magic(const std::filesystem::path& path);

/// EMB1 if the file starts with the magic, word-vector text otherwise.
EmbeddingTable load_embeddings(const std::filesystem::path& path,
                               const WordVectorOptions& options = {});

}  // namespace wavepress
