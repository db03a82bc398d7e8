#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wavepress/wavelet.hpp"

namespace wavepress {

/// Number of coefficients per sub-band for an input of length `n`:
/// ceil(n/2) under Periodization, floor((n + L - 1)/2) otherwise.
std::size_t subband_length(std::size_t n, std::size_t filter_length, PaddingMode mode) noexcept;

struct Subbands {
  std::vector<double> approx;
  std::vector<double> detail;
};

/// One analysis step (filter + downsample by 2). Requires |x| >= 2.
///
/// Periodization correlates with stride 2 from index 0 on the circular
/// signal; odd inputs get their last sample repeated once first. Symmetric
/// and Zero extend the signal and keep every output whose window overlaps it.
Subbands dwt_level(std::span<const double> x, const FilterPair& f, PaddingMode mode);

/// Allocation-free variant; `approx` and `detail` must have
/// subband_length(|x|, L, mode) elements.
void dwt_level_into(std::span<const double> x, const FilterPair& f, PaddingMode mode,
                    std::span<double> approx, std::span<double> detail);

/// Synthesis step inverting dwt_level for a signal of `original_dim` samples.
std::vector<double> idwt_level(std::span<const double> approx, std::span<const double> detail,
                               const FilterPair& f, PaddingMode mode, std::size_t original_dim);

/// Full binary decomposition of a vector. Level k (1-based) holds 2^k branches
/// of equal length; branch labels are strings over {A, D}, the first letter
/// naming the level-1 branch and each following letter the band taken at the
/// next level ("DA" is the approximation of the level-1 detail).
class CoefficientTree {
 public:
  CoefficientTree(WaveletFamily wavelet, PaddingMode mode, std::size_t original_dim);

  std::size_t depth() const noexcept { return levels_.size(); }
  std::size_t original_dim() const noexcept { return original_dim_; }
  const WaveletFamily& wavelet() const noexcept { return wavelet_; }
  PaddingMode mode() const noexcept { return mode_; }

  /// Length of every branch vector at `level` (1-based).
  std::size_t branch_length(std::size_t level) const;

  /// Throws InsufficientDepth if the label is deeper than the tree.
  std::span<const double> branch(std::string_view label) const;

  /// Labels of one level in lexicographic A<D order.
  std::vector<std::string> labels(std::size_t level) const;

 private:
  friend class Decomposer;

  struct Level {
    std::size_t branch_length = 0;
    std::vector<double> data;  // 2^k branches, row-major
  };

  WaveletFamily wavelet_;
  PaddingMode mode_;
  std::size_t original_dim_;
  std::vector<Level> levels_;
};

/// Decomposes many vectors of one shape while reusing the tree storage.
class Decomposer {
 public:
  Decomposer(WaveletFamily wavelet, PaddingMode mode, std::size_t levels);

  /// Throws DimensionTooSmall / TooManyLevels as wavedec does.
  const CoefficientTree& operator()(std::span<const double> x);

  const FilterPair& filters() const noexcept { return filters_; }

 private:
  WaveletFamily wavelet_;
  PaddingMode mode_;
  std::size_t levels_;
  FilterPair filters_;
  CoefficientTree tree_;
};

CoefficientTree wavedec(std::span<const double> x, const WaveletFamily& w, PaddingMode mode,
                        std::size_t levels);

}  // namespace wavepress
