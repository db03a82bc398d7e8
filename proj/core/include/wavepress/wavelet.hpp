#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace wavepress {

enum class Family { Haar, Daubechies, Symlet, Coiflet };

/// A mother wavelet identified by family and order. Construction validates
/// the supported ranges: db1-db10, sym2-sym10, coif1-coif5, and haar (order 1).
class WaveletFamily {
 public:
  WaveletFamily(Family family, int order);

  static WaveletFamily haar() { return {Family::Haar, 1}; }

  /// Parses `haar`, `dbN`, `symN`, `coifN` (case-insensitive).
  static WaveletFamily parse(std::string_view name);

  Family family() const noexcept { return family_; }
  int order() const noexcept { return order_; }

  /// Filter length: 2N for Daubechies/Symlet, 6N for Coiflet, 2 for Haar.
  std::size_t filter_length() const noexcept;

  std::string name() const;

  friend bool operator==(const WaveletFamily&, const WaveletFamily&) = default;

 private:
  Family family_;
  int order_;
};

/// Every wavelet the library ships tables for, in a stable order.
std::vector<WaveletFamily> all_wavelets();

/// Analysis and synthesis filters of an orthogonal wavelet.
///
/// `dec_lo` is applied as a correlation (cA[k] = sum_m dec_lo[m] x[2k+m]).
/// dec_hi[k] = (-1)^k dec_lo[L-1-k]; the reconstruction filters are the
/// time reversals of the analysis filters.
struct FilterPair {
  std::vector<double> dec_lo;
  std::vector<double> dec_hi;
  std::vector<double> rec_lo;
  std::vector<double> rec_hi;

  std::size_t length() const noexcept { return dec_lo.size(); }
};

FilterPair get_filters(const WaveletFamily& w);

enum class PaddingMode { Periodization, Symmetric, Zero };

/// Accepts `per`/`periodization`, `sym`/`symmetric`, `zero`/`zpd`.
PaddingMode parse_mode(std::string_view name);
std::string_view mode_name(PaddingMode mode) noexcept;

}  // namespace wavepress
