#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "wavepress/baselines.hpp"
#include "wavepress/error.hpp"

using namespace wavepress;

namespace {

RowMatrix random_matrix(std::mt19937_64& g, std::size_t n, std::size_t d) {
  std::normal_distribution<double> nd;
  RowMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  // Uneven column scales keep the eigenvalues apart.
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = nd(g) * (1.0 + 0.7 * static_cast<double>(j));
  }
  return m;
}

std::vector<double> covariance(const RowMatrix& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  const auto d = static_cast<std::size_t>(m.cols());
  std::vector<double> mean(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) mean[j] += m(i, j) / static_cast<double>(n);
  }
  std::vector<double> c(d * d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        c[a * d + b] += (m(i, a) - mean[a]) * (m(i, b) - mean[b]) / static_cast<double>(n - 1);
      }
    }
  }
  return c;
}

// Largest principal angle between the row spaces of two k x d orthonormal frames.
double subspace_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const Eigen::MatrixXd m = a * b.transpose();
  const Eigen::MatrixXd mmt = m * m.transpose();
  const auto k = static_cast<std::size_t>(mmt.rows());
  std::vector<double> dense(mmt.data(), mmt.data() + mmt.size());
  const double smin2 = oracle::jacobi_eigen(dense, k).values.back();
  return std::acos(std::min(1.0, std::sqrt(std::max(0.0, smin2))));
}

double reconstruction_error(const RowMatrix& x, const Eigen::VectorXd& mean, const Eigen::MatrixXd& frame) {
  const RowMatrix centered = x.rowwise() - mean.transpose();
  const RowMatrix back = (centered * frame.transpose()) * frame;
  return (centered - back).squaredNorm();
}

}  // namespace

TEST(Dct, MatchesDirectSummation) {
  std::mt19937_64 g(1);
  for (std::size_t d : {1u, 2u, 3u, 7u, 16u, 50u, 100u, 128u, 300u, 511u, 512u}) {
    const auto x = oracle::random_vector(g, d);
    const auto got = dct_ii(x);
    const auto ref = oracle::dct_direct(x);
    ASSERT_EQ(got.size(), d);
    double scale = 0.0;
    for (double v : ref) scale = std::max(scale, std::abs(v));
    for (std::size_t k = 0; k < d; ++k) EXPECT_NEAR(got[k], ref[k], 1e-10 * scale) << "d=" << d;
    EXPECT_NEAR(oracle::norm2(got), oracle::norm2(x), 1e-10 * oracle::norm2(x));
  }
}

TEST(Dct, InverseAndTruncation) {
  std::mt19937_64 g(2);
  const auto x = oracle::random_vector(g, 40);
  const auto c = dct_ii(x);
  const auto back = idct_ii(c, 40);
  for (std::size_t i = 0; i < 40; ++i) EXPECT_NEAR(back[i], x[i], 1e-12);

  const auto t = dct_truncate(x, 10);
  ASSERT_EQ(t.size(), 10u);
  for (std::size_t k = 0; k < 10; ++k) EXPECT_DOUBLE_EQ(t[k], c[k]);
  // Zero-padded inverse is the least-squares reconstruction from 10 terms.
  const auto approx = idct_ii(t, 40);
  double err = 0.0;
  for (std::size_t i = 0; i < 40; ++i) err += (approx[i] - x[i]) * (approx[i] - x[i]);
  double tail = 0.0;
  for (std::size_t k = 10; k < 40; ++k) tail += c[k] * c[k];
  EXPECT_NEAR(err, tail, 1e-10);

  for (std::size_t bad : {0u, 41u}) {
    try {
      dct_truncate(x, bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidTruncation);
    }
  }
}

TEST(Dct, KeepCount) {
  EXPECT_EQ(dct_keep_count(300, 0.5), 150u);
  EXPECT_EQ(dct_keep_count(300, 1.0), 300u);
  EXPECT_EQ(dct_keep_count(10, 0.01), 1u);
  EXPECT_EQ(dct_keep_count(7, 0.5), 4u);
}

TEST(Dct, PlanIsReusable) {
  std::mt19937_64 g(3);
  DctPlan plan(33);
  std::vector<double> out(33);
  for (int i = 0; i < 3; ++i) {
    const auto x = oracle::random_vector(g, 33);
    plan.forward(x, out);
    EXPECT_EQ(out, dct_ii(x));
  }
}

TEST(Pca, MatchesJacobiEigenvectors) {
  std::mt19937_64 g(4);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 2 + g() % 5;           // 2..6
    const std::size_t n = d + 2 + g() % (19 - d);  // up to 20
    const RowMatrix x = random_matrix(g, n, d);
    const std::size_t k = 1 + g() % std::min(n - 1, d);
    const auto model = pca_fit(x, k);
    ASSERT_EQ(model.k(), k);

    const auto e = oracle::jacobi_eigen(covariance(x), d);
    Eigen::MatrixXd ref(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < d; ++j) ref(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = e.vectors[i][j];
      EXPECT_NEAR(model.explained_variance[static_cast<Eigen::Index>(i)], e.values[i], 1e-9 * e.values[0]);
    }
    EXPECT_LT(subspace_angle(model.components, ref), 1e-6) << "n=" << n << " d=" << d << " k=" << k;

    const Eigen::MatrixXd gram = model.components * model.components.transpose();
    EXPECT_TRUE(gram.isIdentity(1e-12));
  }
}

TEST(Pca, BeatsRandomFrames) {
  std::mt19937_64 g(5);
  const RowMatrix x = random_matrix(g, 20, 6);
  const auto model = pca_fit(x, 2);
  const double best = reconstruction_error(x, model.mean, model.components);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 1000; ++i) {
    // Gram-Schmidt on two random directions.
    Eigen::MatrixXd q(2, 6);
    for (Eigen::Index j = 0; j < q.size(); ++j) q.data()[j] = nd(g);
    q.row(0).normalize();
    q.row(1) -= q.row(1).dot(q.row(0)) * q.row(0);
    q.row(1).normalize();
    EXPECT_LE(best, reconstruction_error(x, model.mean, q) + 1e-12);
  }
}

TEST(Pca, TransformIsCenteredAndReconstructs) {
  std::mt19937_64 g(6);
  const RowMatrix x = random_matrix(g, 15, 5);
  const auto full = pca_fit(x, 5);
  const RowMatrix z = pca_transform(full, x);
  EXPECT_LT(z.colwise().mean().cwiseAbs().maxCoeff(), 1e-12);
  const RowMatrix back = pca_reconstruct(full, z);
  EXPECT_LT((back - x).cwiseAbs().maxCoeff(), 1e-10);
  for (Eigen::Index i = 0; i < full.components.rows(); ++i) {
    Eigen::Index arg = 0;
    full.components.row(i).cwiseAbs().maxCoeff(&arg);
    EXPECT_GT(full.components(i, arg), 0.0);
  }
}

TEST(Pca, CollinearDataIsRankDeficient) {
  RowMatrix x(6, 3);
  for (Eigen::Index i = 0; i < 6; ++i) {
    const double t = static_cast<double>(i) - 2.0;
    x.row(i) << t, 2 * t, -t;
  }
  const auto one = pca_fit(x, 1);
  EXPECT_FALSE(one.rank_deficient);
  const Eigen::Vector3d dir = Eigen::Vector3d(1, 2, -1).normalized();
  EXPECT_NEAR(std::abs(one.components.row(0).dot(dir.transpose())), 1.0, 1e-12);
  EXPECT_TRUE(pca_fit(x, 2).rank_deficient);
}

TEST(Pca, Errors) {
  std::mt19937_64 g(7);
  const RowMatrix x = random_matrix(g, 5, 4);
  EXPECT_THROW(pca_fit(x, 0), Error);
  EXPECT_THROW(pca_fit(x, 5), Error);
  EXPECT_THROW(pca_fit(x.topRows(1), 1), Error);
  const auto m = pca_fit(x, 2);
  try {
    pca_transform(m, random_matrix(g, 3, 5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}
