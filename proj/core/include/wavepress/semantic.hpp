#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "wavepress/datasets.hpp"
#include "wavepress/embedding.hpp"
#include "wavepress/report.hpp"

namespace wavepress {

/// Spearman x 100 between pair cosines and gold scores, over pairs whose
/// words both resolve (exact key, then lowercased). Unresolved pairs lower
/// the coverage; fewer than two usable pairs is InsufficientCoverage.
EvalReport eval_word_similarity(const EmbeddingTable& table, const WordSimDataset& data);

/// Same protocol with exact key lookup, for sentence-embedding pairs.
EvalReport eval_sts(const EmbeddingTable& table, const PairIndexDataset& data);

struct KMeansOptions {
  std::size_t restarts = 10;
  std::size_t max_iterations = 300;
  std::uint64_t seed = 42;
};

struct KMeansResult {
  std::vector<std::size_t> assignment;
  RowMatrix centroids;
  double inertia = 0.0;
  std::size_t best_restart = 0;
};

/// Lloyd iterations from k-means++ seeds; the restart with the lowest
/// inertia wins, earlier restarts winning ties.
KMeansResult kmeans(const RowMatrix& points, std::size_t k, const KMeansOptions& options = {});

/// (1/N) * sum over clusters of the size of the cluster's majority label.
double purity(const std::vector<std::size_t>& assignment, const std::vector<std::string>& labels);

/// k-means on L2-normalized vectors with k = number of gold categories that
/// have at least one resolvable word; metric is purity.
EvalReport eval_categorization(const EmbeddingTable& table, const CategorizationDataset& data,
                               std::uint64_t seed = 42);

}  // namespace wavepress
