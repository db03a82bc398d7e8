#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "wavepress/datasets.hpp"
#include "wavepress/embedding.hpp"
#include "wavepress/report.hpp"
#include "wavepress/variant.hpp"

namespace wavepress {

enum class Optimizer { Adam, Sgd };

struct MlpConfig {
  std::size_t hidden_units = 50;  // 0 = multinomial logistic regression
  double l2 = 1e-4;
  std::size_t batch_size = 64;
  std::size_t max_epochs = 200;
  std::size_t patience = 5;
  double learning_rate = 1e-3;
  std::uint64_t seed = 42;
  Optimizer optimizer = Optimizer::Adam;

  std::map<std::string, std::string> describe() const;
};

/// tanh hidden layer followed by a softmax output layer; with no hidden
/// units the output layer reads the input directly.
struct MlpModel {
  Eigen::MatrixXd w1;  // h x d
  Eigen::VectorXd b1;  // h
  Eigen::MatrixXd w2;  // C x h (C x d when h = 0)
  Eigen::VectorXd b2;  // C
  std::vector<std::string> classes;

  std::size_t input_dim() const noexcept;
  std::size_t hidden_units() const noexcept { return static_cast<std::size_t>(w1.rows()); }
  std::size_t parameter_count() const noexcept;

  /// Parameters flattened as w1, b1, w2, b2 (column-major blocks).
  Eigen::VectorXd pack() const;
  void unpack(const Eigen::VectorXd& params);
};

/// Mean softmax cross-entropy over the rows plus l2 * (|W1|^2 + |W2|^2).
/// `targets` are class indices into model.classes.
struct LossAndGradient {
  double loss = 0.0;
  Eigen::VectorXd gradient;  // same layout as MlpModel::pack()
};
LossAndGradient probe_loss(const MlpModel& model, const Eigen::Ref<const RowMatrix>& x,
                           std::span<const std::size_t> targets, double l2);

MlpModel init_probe(std::size_t input_dim, std::size_t num_classes, std::size_t hidden_units,
                    std::uint64_t seed);

struct TrainingLog {
  std::vector<double> train_loss;  // full-data objective after each epoch
  std::vector<double> validation_accuracy;
  std::size_t best_epoch = 0;
  double learning_rate = 0.0;  // the rate finally used
  bool lr_halved = false;
};

/// Mini-batch training with early stopping (patience counts epochs in which
/// neither validation accuracy nor validation loss improved); the
/// returned parameters are those of the best validation epoch.
MlpModel train_probe(const RowMatrix& x, const std::vector<std::string>& labels,
                     const std::vector<Split>& splits, const MlpConfig& config,
                     TrainingLog* log = nullptr);

std::vector<std::size_t> predict(const MlpModel& model, const Eigen::Ref<const RowMatrix>& x);

/// Fraction of rows whose argmax class equals the label.
double evaluate_probe(const MlpModel& model, const Eigen::Ref<const RowMatrix>& x,
                      const std::vector<std::string>& labels);

/// [u, v, |u - v|, u * v]
std::vector<double> pair_features(std::span<const double> u, std::span<const double> v);

/// Builds features for every resolvable item; for each variant compresses,
/// trains, and reports test accuracy x 100.
std::vector<EvalReport> run_task(const EmbeddingTable& table, const LabeledDataset& data,
                                 const MlpConfig& config, const std::vector<Variant>& variants);

}  // namespace wavepress
