#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "wavepress/select.hpp"
#include "wavepress/wavelet.hpp"

namespace wavepress::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Cross product of wavelets x selectors x modes run by `wavepress sweep`.
struct SweepSpec {
  std::vector<WaveletFamily> wavelets;
  std::vector<Selector> selectors;
  std::vector<PaddingMode> modes;

  std::size_t size() const noexcept { return wavelets.size() * selectors.size() * modes.size(); }
  /// Cells in wavelet-major order.
  std::vector<CompressionConfig> cells() const;
};

/// Worker count from --jobs unless WAVEPRESS_JOBS is set; never below 1.
std::size_t resolve_jobs(std::size_t flag_value);

/// Runs the command line `args` (args[0] is the program name). Everything
/// the tool prints goes to `out` / `err`; the return value is the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wavepress::cli
