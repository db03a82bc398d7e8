#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "support/synthetic.hpp"
#include "wavepress/error.hpp"
#include "wavepress/probe.hpp"

using namespace wavepress;

namespace {

using synthetic::blobs;
using synthetic::Data;
using synthetic::split_for;
using synthetic::xor_data;

double test_accuracy(const MlpModel& m, const Data& d) {
  std::vector<Eigen::Index> rows;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d.labels.size(); ++i) {
    if (d.splits[i] == Split::Test) {
      rows.push_back(static_cast<Eigen::Index>(i));
      labels.push_back(d.labels[i]);
    }
  }
  RowMatrix xt(static_cast<Eigen::Index>(rows.size()), d.x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) xt.row(static_cast<Eigen::Index>(i)) = d.x.row(rows[i]);
  return evaluate_probe(m, xt, labels);
}

void check_gradient(std::size_t hidden) {
  std::mt19937_64 g(hidden + 1);
  const std::size_t n = 7, dim = 5, classes = 3;
  RowMatrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = oracle::random_vector(g, 1)[0];
  const std::vector<std::size_t> y{0, 1, 2, 1, 0, 2, 2};
  MlpModel m = init_probe(dim, classes, hidden, 3);
  m.classes = {"a", "b", "c"};
  // Non-zero biases so their gradient path is exercised.
  for (Eigen::Index i = 0; i < m.b1.size(); ++i) m.b1[i] = 0.1 * static_cast<double>(i % 3) - 0.1;
  for (Eigen::Index i = 0; i < m.b2.size(); ++i) m.b2[i] = 0.05 * static_cast<double>(i);
  const double l2 = 0.01;

  const auto analytic = probe_loss(m, x, y, l2);
  const Eigen::VectorXd p0 = m.pack();
  const double h = 1e-5;
  for (Eigen::Index i = 0; i < p0.size(); ++i) {
    Eigen::VectorXd p = p0;
    p[i] += h;
    m.unpack(p);
    const double up = probe_loss(m, x, y, l2).loss;
    p[i] -= 2 * h;
    m.unpack(p);
    const double down = probe_loss(m, x, y, l2).loss;
    const double numeric = (up - down) / (2 * h);
    const double a = analytic.gradient[i];
    const double rel = std::abs(a - numeric) / std::max(1e-8, std::abs(a) + std::abs(numeric));
    EXPECT_LT(rel, 1e-5) << "param " << i << " analytic " << a << " numeric " << numeric;
  }
  m.unpack(p0);
}

}  // namespace

TEST(Probe, GradientMatchesFiniteDifferencesLogistic) { check_gradient(0); }
TEST(Probe, GradientMatchesFiniteDifferencesHidden) { check_gradient(4); }

TEST(Probe, PackUnpackRoundTrip) {
  MlpModel m = init_probe(6, 3, 4, 1);
  EXPECT_EQ(m.parameter_count(), 4u * 6 + 4 + 3 * 4 + 3);
  EXPECT_EQ(m.input_dim(), 6u);
  const auto p = m.pack();
  MlpModel other = init_probe(6, 3, 4, 2);
  other.unpack(p);
  EXPECT_EQ(other.pack(), p);
  EXPECT_THROW(other.unpack(Eigen::VectorXd::Zero(3)), Error);
}

TEST(Probe, SeparableBlobs) {
  const auto d = blobs(600, 10, 3, 0.5, 1);
  MlpConfig c;
  const auto m = train_probe(d.x, d.labels, d.splits, c);
  EXPECT_GE(test_accuracy(m, d), 0.99);
  c.hidden_units = 0;
  const auto lr = train_probe(d.x, d.labels, d.splits, c);
  EXPECT_GE(test_accuracy(lr, d), 0.99);
}

TEST(Probe, XorNeedsHiddenLayer) {
  const auto d = xor_data(1000, 2);
  MlpConfig linear;
  linear.hidden_units = 0;
  linear.learning_rate = 0.01;
  const double lin = test_accuracy(train_probe(d.x, d.labels, d.splits, linear), d);
  EXPECT_LT(lin, 0.7);
  EXPECT_GT(lin, 0.3);

  MlpConfig mlp;
  mlp.hidden_units = 50;
  mlp.learning_rate = 0.01;
  mlp.patience = 20;
  EXPECT_GE(test_accuracy(train_probe(d.x, d.labels, d.splits, mlp), d), 0.95);
}

TEST(Probe, DeterministicForFixedSeed) {
  const auto d = blobs(200, 8, 4, 2.0, 3);
  MlpConfig c;
  c.max_epochs = 30;
  TrainingLog la, lb;
  const auto a = train_probe(d.x, d.labels, d.splits, c, &la);
  const auto b = train_probe(d.x, d.labels, d.splits, c, &lb);
  EXPECT_EQ(a.pack(), b.pack());
  EXPECT_EQ(la.train_loss, lb.train_loss);
  c.seed = 7;
  const auto other = train_probe(d.x, d.labels, d.splits, c);
  EXPECT_NE(other.pack(), a.pack());
}

TEST(Probe, FullBatchSgdDecreasesLoss) {
  const auto d = blobs(150, 6, 3, 1.5, 4);
  MlpConfig c;
  c.optimizer = Optimizer::Sgd;
  c.batch_size = 1000;
  c.learning_rate = 0.05;
  c.max_epochs = 40;
  c.patience = 1000;
  TrainingLog log;
  train_probe(d.x, d.labels, d.splits, c, &log);
  ASSERT_EQ(log.train_loss.size(), 40u);
  for (std::size_t i = 1; i < log.train_loss.size(); ++i) {
    EXPECT_LE(log.train_loss[i], log.train_loss[i - 1] + 1e-12) << "epoch " << i;
  }
}

TEST(Probe, DivergenceHalvesThenThrows) {
  auto d = blobs(100, 4, 2, 1.0, 5);
  d.x *= 1e150;
  MlpConfig c;
  c.optimizer = Optimizer::Sgd;
  c.learning_rate = 1e10;
  c.hidden_units = 0;
  try {
    train_probe(d.x, d.labels, d.splits, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFiniteLoss);
  }
}

TEST(Probe, Errors) {
  const auto d = blobs(50, 3, 2, 1.0, 6);
  MlpConfig c;
  auto labels = d.labels;
  std::vector<Split> splits(d.splits.size(), Split::Train);
  splits[0] = Split::Validation;
  splits[1] = Split::Test;
  labels[1] = "unseen";
  try {
    train_probe(d.x, labels, splits, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ClassMissingInTrain);
  }

  std::vector<Split> no_val(d.splits.size(), Split::Train);
  EXPECT_THROW(train_probe(d.x, d.labels, no_val, c), Error);
  const auto m = train_probe(d.x, d.labels, d.splits, c);
  EXPECT_THROW(evaluate_probe(m, RowMatrix::Zero(2, 5), {"c0", "c1"}), Error);
}

TEST(Probe, PairFeatures) {
  const std::vector<double> u{1, -2, 3}, v{0.5, 4, -1};
  const auto f = pair_features(u, v);
  const std::vector<double> expected{1, -2, 3, 0.5, 4, -1, 0.5, 6, 4, 0.5, -8, -3};
  EXPECT_EQ(f, expected);
  const auto g = pair_features(v, u);
  for (std::size_t i = 6; i < 12; ++i) EXPECT_EQ(f[i], g[i]);
  EXPECT_THROW(pair_features(u, std::vector<double>{1}), Error);
}

TEST(Probe, RunTaskReportsAccuracyAndCoverage) {
  const auto d = blobs(100, 16, 2, 0.5, 8);
  std::vector<std::string> keys;
  LabeledDataset data;
  data.name = "toy";
  for (std::size_t i = 0; i < 100; ++i) {
    keys.push_back("s" + std::to_string(i));
    data.items.push_back({keys.back(), "", d.labels[i], d.splits[i]});
  }
  data.items.push_back({"missing", "", "c0", Split::Train});
  const EmbeddingTable table(keys, d.x);
  const auto reports = run_task(table, data, MlpConfig{},
                                {Variant::base(), Variant::dwt({}), Variant::pca(4)});
  ASSERT_EQ(reports.size(), 3u);
  EXPECT_EQ(reports[0].task, "classify:toy");
  EXPECT_EQ(reports[0].metric_name, "accuracy");
  EXPECT_EQ(reports[0].dim, 16u);
  EXPECT_EQ(reports[1].dim, 8u);
  EXPECT_EQ(reports[2].dim, 4u);
  EXPECT_EQ(reports[1].variant, "cA");
  EXPECT_NEAR(reports[0].coverage, 100.0 / 101.0, 1e-15);
  EXPECT_GE(reports[0].value, 99.0);
  EXPECT_TRUE(run_task(table, data, MlpConfig{}, {}).empty());

  LabeledDataset pairs;
  pairs.name = "pairs";
  for (std::size_t i = 0; i + 2 < 100; ++i) {
    const std::size_t j = i % 4 < 2 ? i + 2 : i + 1;
    pairs.items.push_back({keys[i], keys[j], d.labels[i] == d.labels[j] ? "same" : "diff",
                           split_for(i)});
  }
  const auto pr = run_task(table, pairs, MlpConfig{}, {Variant::base()});
  ASSERT_EQ(pr.size(), 1u);
  EXPECT_EQ(pr[0].dim, 16u);
}
