#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "wavepress/embedding.hpp"

namespace wavepress {

// ---------------------------------------------------------------------------
// DCT-II

/// Orthonormal DCT-II of one length. The plan owns its FFTW buffers; one
/// plan must not be executed from two threads at once.
class DctPlan {
 public:
  explicit DctPlan(std::size_t length);
  ~DctPlan();
  DctPlan(const DctPlan&) = delete;
  DctPlan& operator=(const DctPlan&) = delete;

  std::size_t length() const noexcept { return length_; }

  void forward(std::span<const double> x, std::span<double> out);
  /// DCT-III with the matching normalization; `coeffs` shorter than the plan
  /// length is zero-padded.
  void inverse(std::span<const double> coeffs, std::span<double> out);

 private:
  struct Impl;
  std::size_t length_;
  std::unique_ptr<Impl> impl_;
};

/// X[k] = s(k) sum_n x[n] cos(pi (2n+1) k / 2d), s(0) = sqrt(1/d), s(k) = sqrt(2/d).
std::vector<double> dct_ii(std::span<const double> x);

/// First n coefficients of dct_ii(x); InvalidTruncation unless 1 <= n <= d.
std::vector<double> dct_truncate(std::span<const double> x, std::size_t n);

/// Inverse of dct_ii; missing trailing coefficients are treated as zero.
std::vector<double> idct_ii(std::span<const double> coeffs, std::size_t d);

/// Number of coefficients kept for a fraction of d (rounded, at least 1).
std::size_t dct_keep_count(std::size_t d, double keep_fraction);

// ---------------------------------------------------------------------------
// PCA

struct PcaModel {
  Eigen::VectorXd mean;              // d
  Eigen::MatrixXd components;        // k x d, orthonormal rows
  Eigen::VectorXd explained_variance;  // k, non-increasing
  /// Set when the k-th explained variance is below 1e-12.
  bool rank_deficient = false;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(mean.size()); }
  std::size_t k() const noexcept { return static_cast<std::size_t>(components.rows()); }
};

/// Rows of `m` are samples. Components are the top-k eigenvectors of the
/// sample covariance, each signed so its largest-magnitude entry is positive.
PcaModel pca_fit(const Eigen::Ref<const RowMatrix>& m, std::size_t k);

/// (m - mean) * components^T
RowMatrix pca_transform(const PcaModel& model, const Eigen::Ref<const RowMatrix>& m);

/// Maps projected rows back into the original space.
RowMatrix pca_reconstruct(const PcaModel& model, const Eigen::Ref<const RowMatrix>& projected);

}  // namespace wavepress
