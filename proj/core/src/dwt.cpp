#include "wavepress/dwt.hpp"

#include <algorithm>
#include <cstdint>

#include "wavepress/error.hpp"

namespace wavepress {

namespace {

using Index = std::ptrdiff_t;

// Half-sample symmetric reflection, period 2n: ... x1 x0 | x0 x1 ... x_{n-1} | x_{n-1} ...
Index reflect(Index i, Index n) {
  const Index period = 2 * n;
  Index j = i % period;
  if (j < 0) j += period;
  return j < n ? j : period - 1 - j;
}

void check_filters(const FilterPair& f) {
  if (f.dec_lo.size() < 2 || f.dec_hi.size() != f.dec_lo.size()) {
    throw Error(ErrorCode::InvalidArgument, "filter pair must have two equal-length filters");
  }
}

void analysis_periodized(std::span<const double> x, std::span<const double> lo,
                         std::span<const double> hi, std::span<double> approx,
                         std::span<double> detail) {
  const Index d = static_cast<Index>(x.size());
  const Index n = d + (d % 2);
  const Index len = static_cast<Index>(lo.size());
  const Index half = n / 2;
  for (Index k = 0; k < half; ++k) {
    const Index base = 2 * k;
    double a = 0.0;
    double b = 0.0;
    if (base + len <= d) {
      const double* px = x.data() + base;
      for (Index m = 0; m < len; ++m) {
        a += lo[m] * px[m];
        b += hi[m] * px[m];
      }
    } else {
      for (Index m = 0; m < len; ++m) {
        const Index idx = (base + m) % n;
        const double v = idx < d ? x[idx] : x[d - 1];
        a += lo[m] * v;
        b += hi[m] * v;
      }
    }
    approx[k] = a;
    detail[k] = b;
  }
}

void analysis_extended(std::span<const double> x, std::span<const double> lo,
                       std::span<const double> hi, PaddingMode mode, std::span<double> approx,
                       std::span<double> detail) {
  const Index d = static_cast<Index>(x.size());
  const Index len = static_cast<Index>(lo.size());
  const Index offset = len - 2;
  const Index outputs = static_cast<Index>(approx.size());
  for (Index o = 0; o < outputs; ++o) {
    const Index start = 2 * o - offset;
    double a = 0.0;
    double b = 0.0;
    if (start >= 0 && start + len <= d) {
      const double* px = x.data() + start;
      for (Index m = 0; m < len; ++m) {
        a += lo[m] * px[m];
        b += hi[m] * px[m];
      }
    } else {
      for (Index m = 0; m < len; ++m) {
        const Index i = start + m;
        double v;
        if (i >= 0 && i < d) {
          v = x[i];
        } else if (mode == PaddingMode::Zero) {
          continue;
        } else {
          v = x[reflect(i, d)];
        }
        a += lo[m] * v;
        b += hi[m] * v;
      }
    }
    approx[o] = a;
    detail[o] = b;
  }
}

}  // namespace

std::size_t subband_length(std::size_t n, std::size_t filter_length, PaddingMode mode) noexcept {
  if (mode == PaddingMode::Periodization) return (n + 1) / 2;
  return (n + filter_length - 1) / 2;
}

void dwt_level_into(std::span<const double> x, const FilterPair& f, PaddingMode mode,
                    std::span<double> approx, std::span<double> detail) {
  check_filters(f);
  if (x.size() < 2) {
    throw Error(ErrorCode::DimensionTooSmall,
                "dwt needs at least 2 samples, got " + std::to_string(x.size()));
  }
  const std::size_t m = subband_length(x.size(), f.length(), mode);
  if (approx.size() != m || detail.size() != m) {
    throw Error(ErrorCode::LengthMismatch, "output buffers must hold " + std::to_string(m) +
                                               " coefficients");
  }
  if (mode == PaddingMode::Periodization) {
    analysis_periodized(x, f.dec_lo, f.dec_hi, approx, detail);
  } else {
    analysis_extended(x, f.dec_lo, f.dec_hi, mode, approx, detail);
  }
}

Subbands dwt_level(std::span<const double> x, const FilterPair& f, PaddingMode mode) {
  check_filters(f);
  if (x.size() < 2) {
    throw Error(ErrorCode::DimensionTooSmall,
                "dwt needs at least 2 samples, got " + std::to_string(x.size()));
  }
  const std::size_t m = subband_length(x.size(), f.length(), mode);
  Subbands out{std::vector<double>(m), std::vector<double>(m)};
  dwt_level_into(x, f, mode, out.approx, out.detail);
  return out;
}

// Synthesis is the adjoint of the analysis operator, written as a scatter of
// each coefficient through the analysis filter taps.
std::vector<double> idwt_level(std::span<const double> approx, std::span<const double> detail,
                               const FilterPair& f, PaddingMode mode, std::size_t original_dim) {
  check_filters(f);
  if (approx.size() != detail.size()) {
    throw Error(ErrorCode::LengthMismatch, "cA has " + std::to_string(approx.size()) +
                                               " coefficients but cD has " +
                                               std::to_string(detail.size()));
  }
  if (original_dim < 2) {
    throw Error(ErrorCode::DimensionTooSmall, "original dimension must be at least 2");
  }
  if (subband_length(original_dim, f.length(), mode) != approx.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(approx.size()) + " coefficients cannot come from a signal of " +
                    std::to_string(original_dim) + " samples in mode " +
                    std::string(mode_name(mode)));
  }

  const Index len = static_cast<Index>(f.length());
  const Index outputs = static_cast<Index>(approx.size());
  const auto& lo = f.dec_lo;
  const auto& hi = f.dec_hi;

  if (mode == PaddingMode::Periodization) {
    const Index d = static_cast<Index>(original_dim);
    const Index n = d + (d % 2);
    std::vector<double> ext(static_cast<std::size_t>(n), 0.0);
    for (Index k = 0; k < outputs; ++k) {
      const Index base = 2 * k;
      const double a = approx[k];
      const double b = detail[k];
      if (base + len <= n) {
        double* pe = ext.data() + base;
        for (Index m = 0; m < len; ++m) pe[m] += a * lo[m] + b * hi[m];
      } else {
        for (Index m = 0; m < len; ++m) ext[(base + m) % n] += a * lo[m] + b * hi[m];
      }
    }
    ext.resize(original_dim);
    return ext;
  }

  const Index d = static_cast<Index>(original_dim);
  const Index offset = len - 2;
  std::vector<double> out(original_dim, 0.0);
  for (Index o = 0; o < outputs; ++o) {
    const Index start = 2 * o - offset;
    const double a = approx[o];
    const double b = detail[o];
    const Index m_begin = std::max<Index>(0, -start);
    const Index m_end = std::min<Index>(len, d - start);
    for (Index m = m_begin; m < m_end; ++m) out[start + m] += a * lo[m] + b * hi[m];
  }
  return out;
}

CoefficientTree::CoefficientTree(WaveletFamily wavelet, PaddingMode mode, std::size_t original_dim)
    : wavelet_(wavelet), mode_(mode), original_dim_(original_dim) {}

std::size_t CoefficientTree::branch_length(std::size_t level) const {
  if (level == 0 || level > levels_.size()) {
    throw Error(ErrorCode::InsufficientDepth, "tree has " + std::to_string(levels_.size()) +
                                                  " levels, asked for level " +
                                                  std::to_string(level));
  }
  return levels_[level - 1].branch_length;
}

std::span<const double> CoefficientTree::branch(std::string_view label) const {
  if (label.empty()) throw Error(ErrorCode::InvalidArgument, "empty branch label");
  std::size_t index = 0;
  for (char c : label) {
    if (c != 'A' && c != 'D') {
      throw Error(ErrorCode::InvalidArgument, "branch label must use A/D: " + std::string(label));
    }
    index = 2 * index + (c == 'D' ? 1 : 0);
  }
  const std::size_t len = branch_length(label.size());
  const auto& level = levels_[label.size() - 1];
  return std::span<const double>(level.data).subspan(index * len, len);
}

std::vector<std::string> CoefficientTree::labels(std::size_t level) const {
  branch_length(level);
  std::vector<std::string> out;
  const std::size_t count = std::size_t{1} << level;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::string s(level, 'A');
    for (std::size_t bit = 0; bit < level; ++bit) {
      if ((i >> (level - 1 - bit)) & 1) s[bit] = 'D';
    }
    out.push_back(std::move(s));
  }
  return out;
}

Decomposer::Decomposer(WaveletFamily wavelet, PaddingMode mode, std::size_t levels)
    : wavelet_(wavelet),
      mode_(mode),
      levels_(levels),
      filters_(get_filters(wavelet)),
      tree_(wavelet, mode, 0) {
  if (levels == 0) throw Error(ErrorCode::InvalidArgument, "at least one level is required");
}

const CoefficientTree& Decomposer::operator()(std::span<const double> x) {
  if (x.size() < 2) {
    throw Error(ErrorCode::DimensionTooSmall,
                "dwt needs at least 2 samples, got " + std::to_string(x.size()));
  }
  tree_.original_dim_ = x.size();
  tree_.levels_.resize(levels_);

  std::size_t input_length = x.size();
  std::size_t branches = 1;
  for (std::size_t k = 0; k < levels_; ++k) {
    if (input_length < 2) {
      throw Error(ErrorCode::TooManyLevels,
                  "level " + std::to_string(k + 1) + " would decompose branches of length " +
                      std::to_string(input_length));
    }
    const std::size_t out_length = subband_length(input_length, filters_.length(), mode_);
    auto& level = tree_.levels_[k];
    level.branch_length = out_length;
    level.data.resize(2 * branches * out_length);
    for (std::size_t b = 0; b < branches; ++b) {
      std::span<const double> parent =
          k == 0 ? x
                 : std::span<const double>(tree_.levels_[k - 1].data)
                       .subspan(b * input_length, input_length);
      std::span<double> out(level.data);
      dwt_level_into(parent, filters_, mode_, out.subspan(2 * b * out_length, out_length),
                     out.subspan((2 * b + 1) * out_length, out_length));
    }
    input_length = out_length;
    branches *= 2;
  }
  return tree_;
}

CoefficientTree wavedec(std::span<const double> x, const WaveletFamily& w, PaddingMode mode,
                        std::size_t levels) {
  Decomposer decomposer(w, mode, levels);
  return decomposer(x);
}

}  // namespace wavepress
