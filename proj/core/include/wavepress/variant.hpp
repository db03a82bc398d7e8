#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "wavepress/embedding.hpp"
#include "wavepress/select.hpp"

namespace wavepress {

/// One way of producing the embeddings under evaluation: the table as is,
/// a wavelet selector, or one of the PCA / truncated-DCT baselines.
struct Variant {
  enum class Kind { Base, Wavelet, Pca, Dct };

  Kind kind = Kind::Base;
  CompressionConfig wavelet;
  std::size_t pca_k = 0;
  double dct_keep = 0.5;

  static Variant base() { return {}; }
  static Variant dwt(const CompressionConfig& c) { return {Kind::Wavelet, c, 0, 0.5}; }
  static Variant pca(std::size_t k) { return {Kind::Pca, {}, k, 0.5}; }
  static Variant dct(double keep) { return {Kind::Dct, {}, 0, keep}; }

  /// Report label: "base", selector name ("cA+cDA"), "pca", "dct".
  std::string name() const;
  std::map<std::string, std::string> metadata() const;
};

/// `pca`, `pca:150`, `dct`, `dct:0.5`. A bare name takes the given default.
Variant parse_baseline(std::string_view spec, std::optional<std::size_t> default_k,
                       std::optional<double> default_keep);

/// PCA is fitted on the rows of `table` itself.
EmbeddingTable apply_variant(const EmbeddingTable& table, const Variant& v, std::size_t jobs = 1);

}  // namespace wavepress
