#include "wavepress/embedding.hpp"

#include <algorithm>
#include <cctype>

#include "wavepress/error.hpp"

namespace wavepress {

EmbeddingTable::EmbeddingTable(std::vector<std::string> keys, RowMatrix matrix)
    : keys_(std::move(keys)), matrix_(std::move(matrix)) {
  if (static_cast<Eigen::Index>(keys_.size()) != matrix_.rows()) {
    throw Error(ErrorCode::InvalidArgument, std::to_string(keys_.size()) + " keys for " +
                                                std::to_string(matrix_.rows()) + " rows");
  }
  if (!matrix_.allFinite()) throw Error(ErrorCode::InvalidArgument, "non-finite embedding value");
  index_.reserve(keys_.size());
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    if (!index_.emplace(keys_[i], i).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate key '" + keys_[i] + "'");
    }
  }
}

std::optional<std::size_t> EmbeddingTable::find(const std::string& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> EmbeddingTable::find_folded(const std::string& key) const {
  if (auto hit = find(key)) return hit;
  std::string folded = key;
  std::transform(folded.begin(), folded.end(), folded.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (folded == key) return std::nullopt;
  return find(folded);
}

}  // namespace wavepress
