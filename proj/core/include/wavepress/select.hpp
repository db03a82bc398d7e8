#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wavepress/dwt.hpp"
#include "wavepress/embedding.hpp"
#include "wavepress/wavelet.hpp"

namespace wavepress {

enum class Selector { CA, CD, CAA, CDA, CAAA, CAAAA, CA_PLUS_CDA, CD_PLUS_CAD };

/// Case-insensitive; accepts `cA`, `cDA`, `cA+cDA`, `ca_plus_cda`, ...
Selector parse_selector(std::string_view name);
/// Canonical short name ("cA", "cA+cDA").
std::string selector_name(Selector s);
std::vector<Selector> all_selectors();

std::size_t required_depth(Selector s) noexcept;

/// Branch labels concatenated (level-1 block first) to form the output.
std::vector<std::string> selector_branches(Selector s);

struct CompressionConfig {
  WaveletFamily wavelet = WaveletFamily::haar();
  PaddingMode mode = PaddingMode::Periodization;
  Selector selector = Selector::CA;

  std::size_t levels() const noexcept { return required_depth(selector); }
  std::string describe() const;
};

std::vector<double> select(const CoefficientTree& tree, Selector s);

/// Output dimension without touching data. Throws InsufficientDepth when a
/// d-dimensional vector cannot be decomposed to the selector's depth.
std::size_t compressed_dim(std::size_t original_dim, Selector s, PaddingMode mode,
                           std::size_t filter_length);
std::size_t compressed_dim(std::size_t original_dim, const CompressionConfig& c);

/// Periodization lengths do not depend on the filter; the other modes need
/// the wavelet and go through the four-argument overload.
double compression_ratio(std::size_t original_dim, Selector s, PaddingMode mode);
double compression_ratio(std::size_t original_dim, Selector s, PaddingMode mode,
                         const WaveletFamily& w);

/// Compresses single vectors of a fixed input dimension, computing only the
/// branches the selector needs and reusing scratch buffers across calls.
/// Output is identical to select(wavedec(x)).
class RowCompressor {
 public:
  RowCompressor(const CompressionConfig& config, std::size_t input_dim);

  std::size_t input_dim() const noexcept { return input_dim_; }
  std::size_t output_dim() const noexcept { return output_dim_; }

  void compress(std::span<const double> in, std::span<double> out);

 private:
  CompressionConfig config_;
  FilterPair filters_;
  std::size_t input_dim_;
  std::size_t output_dim_;
  std::vector<std::string> branches_;
  std::vector<double> level1_;                // [cA | cD]
  std::vector<std::vector<double>> scratch_;  // two buffers per deeper level
};

/// Row-wise compression; keys and order preserved. With jobs > 1 rows are
/// split into contiguous ranges, so the result does not depend on `jobs`.
EmbeddingTable compress_table(const EmbeddingTable& table, const CompressionConfig& c,
                              std::size_t jobs = 1);

}  // namespace wavepress
