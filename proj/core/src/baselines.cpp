#include "wavepress/baselines.hpp"

#include <fftw3.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <mutex>
#include <unordered_map>

#include "wavepress/error.hpp"

namespace wavepress {

namespace {

// FFTW's planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

DctPlan& cached_plan(std::size_t length) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<DctPlan>> cache;
  auto& slot = cache[length];
  if (!slot) slot = std::make_unique<DctPlan>(length);
  return *slot;
}

}  // namespace

struct DctPlan::Impl {
  double* in = nullptr;
  double* out = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

DctPlan::DctPlan(std::size_t length) : length_(length), impl_(std::make_unique<Impl>()) {
  if (length == 0) throw Error(ErrorCode::InvalidArgument, "DCT of an empty vector");
  std::lock_guard lock(planner_mutex());
  impl_->in = fftw_alloc_real(length);
  impl_->out = fftw_alloc_real(length);
  const int n = static_cast<int>(length);
  impl_->forward = fftw_plan_r2r_1d(n, impl_->in, impl_->out, FFTW_REDFT10, FFTW_ESTIMATE);
  impl_->inverse = fftw_plan_r2r_1d(n, impl_->in, impl_->out, FFTW_REDFT01, FFTW_ESTIMATE);
}

DctPlan::~DctPlan() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(impl_->forward);
  fftw_destroy_plan(impl_->inverse);
  fftw_free(impl_->in);
  fftw_free(impl_->out);
}

// FFTW's REDFT10 is 2 * sum_n x[n] cos(pi (2n+1) k / 2N); REDFT01 is its
// unnormalized inverse X[0] + 2 sum_k X[k] cos(...).
void DctPlan::forward(std::span<const double> x, std::span<double> out) {
  if (x.size() != length_ || out.size() != length_) {
    throw Error(ErrorCode::DimensionMismatch, "DCT plan length " + std::to_string(length_));
  }
  std::copy(x.begin(), x.end(), impl_->in);
  fftw_execute(impl_->forward);
  const double n = static_cast<double>(length_);
  const double s0 = std::sqrt(1.0 / n) / 2.0;
  const double sk = std::sqrt(2.0 / n) / 2.0;
  out[0] = impl_->out[0] * s0;
  for (std::size_t k = 1; k < length_; ++k) out[k] = impl_->out[k] * sk;
}

void DctPlan::inverse(std::span<const double> coeffs, std::span<double> out) {
  if (coeffs.size() > length_ || out.size() != length_) {
    throw Error(ErrorCode::DimensionMismatch, "DCT plan length " + std::to_string(length_));
  }
  const double n = static_cast<double>(length_);
  const double s0 = std::sqrt(1.0 / n);
  const double sk = std::sqrt(2.0 / n) / 2.0;
  std::fill(impl_->in, impl_->in + length_, 0.0);
  for (std::size_t k = 0; k < coeffs.size(); ++k) impl_->in[k] = coeffs[k] * (k == 0 ? s0 : sk);
  fftw_execute(impl_->inverse);
  std::copy(impl_->out, impl_->out + length_, out.begin());
}

std::vector<double> dct_ii(std::span<const double> x) {
  if (x.empty()) throw Error(ErrorCode::InvalidArgument, "DCT of an empty vector");
  std::vector<double> out(x.size());
  cached_plan(x.size()).forward(x, out);
  return out;
}

std::vector<double> dct_truncate(std::span<const double> x, std::size_t n) {
  if (n < 1 || n > x.size()) {
    throw Error(ErrorCode::InvalidTruncation, "cannot keep " + std::to_string(n) + " of " +
                                                  std::to_string(x.size()) + " coefficients");
  }
  auto full = dct_ii(x);
  full.resize(n);
  return full;
}

std::vector<double> idct_ii(std::span<const double> coeffs, std::size_t d) {
  if (d == 0 || coeffs.size() > d) {
    throw Error(ErrorCode::InvalidTruncation, "inverse DCT length mismatch");
  }
  std::vector<double> out(d);
  cached_plan(d).inverse(coeffs, out);
  return out;
}

std::size_t dct_keep_count(std::size_t d, double keep_fraction) {
  if (!(keep_fraction > 0.0) || keep_fraction > 1.0) {
    throw Error(ErrorCode::InvalidTruncation, "keep fraction must be in (0, 1]");
  }
  const auto n = static_cast<std::size_t>(std::llround(keep_fraction * static_cast<double>(d)));
  return std::clamp<std::size_t>(n, 1, d);
}

PcaModel pca_fit(const Eigen::Ref<const RowMatrix>& m, std::size_t k) {
  const auto rows = static_cast<std::size_t>(m.rows());
  const auto d = static_cast<std::size_t>(m.cols());
  if (rows < 2) throw Error(ErrorCode::InvalidArgument, "PCA needs at least 2 samples");
  if (k < 1 || k > std::min(rows - 1, d)) {
    throw Error(ErrorCode::InvalidArgument, "k = " + std::to_string(k) +
                                                " outside [1, min(N-1, d)] for N=" +
                                                std::to_string(rows) + ", d=" + std::to_string(d));
  }

  PcaModel model;
  model.mean = m.colwise().mean().transpose();
  const Eigen::MatrixXd centered = m.rowwise() - model.mean.transpose();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d),
                                              static_cast<Eigen::Index>(d));
  cov.selfadjointView<Eigen::Lower>().rankUpdate(centered.transpose());
  cov = cov.selfadjointView<Eigen::Lower>();
  cov /= static_cast<double>(rows - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidArgument, "covariance eigendecomposition failed");
  }
  // Eigen sorts eigenvalues ascending.
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  const auto kk = static_cast<Eigen::Index>(k);
  model.components.resize(kk, static_cast<Eigen::Index>(d));
  model.explained_variance.resize(kk);
  for (Eigen::Index i = 0; i < kk; ++i) {
    const Eigen::Index src = static_cast<Eigen::Index>(d) - 1 - i;
    Eigen::VectorXd v = vectors.col(src);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v[arg] < 0) v = -v;
    model.components.row(i) = v.transpose();
    model.explained_variance[i] = std::max(0.0, values[src]);
  }
  model.rank_deficient = model.explained_variance[kk - 1] < 1e-12;
  return model;
}

RowMatrix pca_transform(const PcaModel& model, const Eigen::Ref<const RowMatrix>& m) {
  if (static_cast<std::size_t>(m.cols()) != model.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "PCA model expects " + std::to_string(model.dim()) +
                                                  " columns, got " + std::to_string(m.cols()));
  }
  return (m.rowwise() - model.mean.transpose()) * model.components.transpose();
}

RowMatrix pca_reconstruct(const PcaModel& model, const Eigen::Ref<const RowMatrix>& projected) {
  if (static_cast<std::size_t>(projected.cols()) != model.k()) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(model.k()) +
                                                  " projected columns");
  }
  RowMatrix out = projected * model.components;
  out.rowwise() += model.mean.transpose();
  return out;
}

}  // namespace wavepress
