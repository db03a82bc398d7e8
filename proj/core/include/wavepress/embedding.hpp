#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wavepress {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Ordered key -> vector mapping. Keys are unique, rows are finite, and all
/// rows share one dimension.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  /// Throws InvalidArgument on duplicate keys, size mismatch, or non-finite values.
  EmbeddingTable(std::vector<std::string> keys, RowMatrix matrix);

  std::size_t size() const noexcept { return keys_.size(); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.cols()); }
  bool empty() const noexcept { return keys_.empty(); }

  const std::vector<std::string>& keys() const noexcept { return keys_; }
  const RowMatrix& matrix() const noexcept { return matrix_; }

  std::span<const double> row(std::size_t i) const {
    return {matrix_.data() + i * dim(), dim()};
  }

  std::optional<std::size_t> find(const std::string& key) const;

  /// Exact match first, then the ASCII-lowercased key.
  std::optional<std::size_t> find_folded(const std::string& key) const;

 private:
  std::vector<std::string> keys_;
  RowMatrix matrix_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace wavepress
