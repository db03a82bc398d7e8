#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "wavepress/embedding.hpp"

namespace wavepress {

/// Throws ZeroVector if either input is all zeros, DimensionMismatch on size.
double cosine(std::span<const double> u, std::span<const double> v);

/// 1-based ranks; tied values share the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> xs);

double pearson(std::span<const double> xs, std::span<const double> ys);

/// Pearson correlation of the average ranks. DegenerateInput for fewer than
/// two points or a constant series.
double spearman(std::span<const double> xs, std::span<const double> ys);

struct Neighbor {
  std::string key;
  double similarity = 0.0;
};

/// Top-k rows by cosine to `query_key`, best first. Ties go to the query
/// itself, then to table order.
/// Rows that are all zeros are never returned.
std::vector<Neighbor> knn(const EmbeddingTable& table, const std::string& query_key,
                          std::size_t k, bool include_self = true);

/// M[i][j] = cosine(a_i, b_j).
RowMatrix similarity_matrix(const EmbeddingTable& a, const EmbeddingTable& b);

/// Header row of b's keys, then one row per key of a.
void write_similarity_tsv(std::ostream& out, const EmbeddingTable& a, const EmbeddingTable& b,
                          const RowMatrix& m);

}  // namespace wavepress
