#include "wavepress/probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "wavepress/error.hpp"
#include "wavepress/random.hpp"

namespace wavepress {

namespace {

struct Forward {
  Eigen::MatrixXd hidden;  // N x h, post-tanh (empty when h = 0)
  Eigen::MatrixXd probs;   // N x C
};

Forward forward(const MlpModel& m, const Eigen::Ref<const RowMatrix>& x) {
  Forward f;
  Eigen::MatrixXd logits;
  if (m.hidden_units() > 0) {
    f.hidden = ((x * m.w1.transpose()).rowwise() + m.b1.transpose()).array().tanh();
    logits = (f.hidden * m.w2.transpose()).rowwise() + m.b2.transpose();
  } else {
    logits = (x * m.w2.transpose()).rowwise() + m.b2.transpose();
  }
  const Eigen::VectorXd row_max = logits.rowwise().maxCoeff();
  f.probs = (logits.colwise() - row_max).array().exp();
  const Eigen::VectorXd z = f.probs.rowwise().sum();
  f.probs.array().colwise() /= z.array();
  return f;
}

struct Adam {
  Eigen::VectorXd m;
  Eigen::VectorXd v;
  std::size_t t = 0;

  explicit Adam(Eigen::Index n) : m(Eigen::VectorXd::Zero(n)), v(Eigen::VectorXd::Zero(n)) {}

  void step(Eigen::VectorXd& params, const Eigen::VectorXd& g, double lr) {
    constexpr double beta1 = 0.9;
    constexpr double beta2 = 0.999;
    constexpr double eps = 1e-8;
    ++t;
    m = beta1 * m + (1.0 - beta1) * g;
    v = beta2 * v + (1.0 - beta2) * g.cwiseProduct(g);
    const double c1 = 1.0 - std::pow(beta1, static_cast<double>(t));
    const double c2 = 1.0 - std::pow(beta2, static_cast<double>(t));
    params.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + eps);
  }
};

RowMatrix gather_rows(const RowMatrix& x, const std::vector<std::size_t>& rows) {
  RowMatrix out(static_cast<Eigen::Index>(rows.size()), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = x.row(static_cast<Eigen::Index>(rows[i]));
  }
  return out;
}

double accuracy_of(const MlpModel& m, const RowMatrix& x, const std::vector<std::size_t>& y) {
  const auto pred = predict(m, x);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < y.size(); ++i) hits += pred[i] == y[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(y.size());
}

// One full training run at a fixed learning rate. Returns false when the
// objective became non-finite.
bool fit(const RowMatrix& xt, const std::vector<std::size_t>& yt, const RowMatrix& xv,
         const std::vector<std::size_t>& yv, std::size_t num_classes, const MlpConfig& c,
         double lr, MlpModel& best, TrainingLog& log) {
  MlpModel model = init_probe(static_cast<std::size_t>(xt.cols()), num_classes, c.hidden_units,
                              c.seed);
  model.classes = best.classes;
  Eigen::VectorXd params = model.pack();
  Adam adam(params.size());
  Rng order_rng(c.seed ^ 0x9E3779B97F4A7C15ULL);

  std::vector<std::size_t> order(yt.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t batch = std::max<std::size_t>(1, c.batch_size);

  log = TrainingLog{};
  log.learning_rate = lr;
  double best_acc = -1.0;
  double best_model_loss = std::numeric_limits<double>::infinity();
  double best_val_loss = std::numeric_limits<double>::infinity();
  std::size_t stale = 0;
  std::vector<std::size_t> batch_rows;
  std::vector<std::size_t> batch_targets;

  for (std::size_t epoch = 0; epoch < c.max_epochs; ++epoch) {
    order_rng.shuffle(order);
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t end = std::min(order.size(), start + batch);
      batch_rows.assign(order.begin() + static_cast<std::ptrdiff_t>(start),
                        order.begin() + static_cast<std::ptrdiff_t>(end));
      batch_targets.clear();
      for (auto r : batch_rows) batch_targets.push_back(yt[r]);
      const RowMatrix xb = gather_rows(xt, batch_rows);
      const auto lg = probe_loss(model, xb, batch_targets, c.l2);
      if (!std::isfinite(lg.loss) || !lg.gradient.allFinite()) return false;
      if (c.optimizer == Optimizer::Adam) {
        adam.step(params, lg.gradient, lr);
      } else {
        params -= lr * lg.gradient;
      }
      model.unpack(params);
    }

    const double objective = probe_loss(model, xt, yt, c.l2).loss;
    if (!std::isfinite(objective)) return false;
    log.train_loss.push_back(objective);
    const double acc = accuracy_of(model, xv, yv);
    log.validation_accuracy.push_back(acc);
    // The returned model is the best by validation accuracy (ties to the lower
    // validation loss), but patience only runs out once neither quantity has
    // improved: early epochs on badly scaled inputs can lose a point of
    // accuracy while the loss is still falling fast.
    const double val_loss = probe_loss(model, xv, yv, 0.0).loss;
    bool progressed = false;
    if (acc > best_acc || (acc == best_acc && val_loss < best_model_loss)) {
      best_acc = acc;
      best_model_loss = val_loss;
      best = model;
      log.best_epoch = epoch;
      progressed = true;
    }
    if (val_loss < best_val_loss) {
      best_val_loss = val_loss;
      progressed = true;
    }
    if (progressed) {
      stale = 0;
    } else if (++stale >= c.patience) {
      break;
    }
  }
  return true;
}

}  // namespace

std::map<std::string, std::string> MlpConfig::describe() const {
  std::ostringstream lr, reg;
  lr << learning_rate;
  reg << l2;
  return {{"hidden", std::to_string(hidden_units)},
          {"l2", reg.str()},
          {"batch", std::to_string(batch_size)},
          {"max_epochs", std::to_string(max_epochs)},
          {"patience", std::to_string(patience)},
          {"lr", lr.str()},
          {"seed", std::to_string(seed)},
          {"optimizer", optimizer == Optimizer::Adam ? "adam" : "sgd"}};
}

std::size_t MlpModel::input_dim() const noexcept {
  return static_cast<std::size_t>(hidden_units() > 0 ? w1.cols() : w2.cols());
}

std::size_t MlpModel::parameter_count() const noexcept {
  return static_cast<std::size_t>(w1.size() + b1.size() + w2.size() + b2.size());
}

Eigen::VectorXd MlpModel::pack() const {
  Eigen::VectorXd p(static_cast<Eigen::Index>(parameter_count()));
  Eigen::Index o = 0;
  p.segment(o, w1.size()) = w1.reshaped();
  o += w1.size();
  p.segment(o, b1.size()) = b1;
  o += b1.size();
  p.segment(o, w2.size()) = w2.reshaped();
  o += w2.size();
  p.segment(o, b2.size()) = b2;
  return p;
}

void MlpModel::unpack(const Eigen::VectorXd& p) {
  if (static_cast<std::size_t>(p.size()) != parameter_count()) {
    throw Error(ErrorCode::DimensionMismatch, "parameter vector has the wrong length");
  }
  Eigen::Index o = 0;
  w1.reshaped() = p.segment(o, w1.size());
  o += w1.size();
  b1 = p.segment(o, b1.size());
  o += b1.size();
  w2.reshaped() = p.segment(o, w2.size());
  o += w2.size();
  b2 = p.segment(o, b2.size());
}

MlpModel init_probe(std::size_t input_dim, std::size_t num_classes, std::size_t hidden_units,
                    std::uint64_t seed) {
  Rng rng(seed);
  auto glorot = [&](Eigen::Index rows, Eigen::Index cols) {
    const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
    Eigen::MatrixXd w(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
      for (Eigen::Index i = 0; i < rows; ++i) w(i, j) = rng.uniform(-limit, limit);
    }
    return w;
  };
  const auto d = static_cast<Eigen::Index>(input_dim);
  const auto h = static_cast<Eigen::Index>(hidden_units);
  const auto c = static_cast<Eigen::Index>(num_classes);
  MlpModel m;
  if (h > 0) {
    m.w1 = glorot(h, d);
    m.b1 = Eigen::VectorXd::Zero(h);
    m.w2 = glorot(c, h);
  } else {
    m.w1.resize(0, d);
    m.b1.resize(0);
    m.w2 = glorot(c, d);
  }
  m.b2 = Eigen::VectorXd::Zero(c);
  return m;
}

LossAndGradient probe_loss(const MlpModel& m, const Eigen::Ref<const RowMatrix>& x,
                           std::span<const std::size_t> targets, double l2) {
  if (static_cast<std::size_t>(x.cols()) != m.input_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "probe expects " + std::to_string(m.input_dim()) +
                                                  " features, got " + std::to_string(x.cols()));
  }
  if (static_cast<std::size_t>(x.rows()) != targets.size() || targets.empty()) {
    throw Error(ErrorCode::LengthMismatch, "one target per row is required");
  }
  const auto n = static_cast<double>(targets.size());
  const Forward f = forward(m, x);

  LossAndGradient out;
  Eigen::MatrixXd delta = f.probs;  // dLoss/dlogits * N
  double ce = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    const auto t = static_cast<Eigen::Index>(targets[i]);
    ce -= std::log(std::max(f.probs(r, t), 1e-300));
    delta(r, t) -= 1.0;
  }
  delta /= n;
  out.loss = ce / n + l2 * (m.w1.squaredNorm() + m.w2.squaredNorm());

  MlpModel g;
  g.w1 = Eigen::MatrixXd::Zero(m.w1.rows(), m.w1.cols());
  g.b1 = Eigen::VectorXd::Zero(m.b1.size());
  g.b2 = delta.colwise().sum().transpose();
  if (m.hidden_units() > 0) {
    g.w2 = delta.transpose() * f.hidden + 2.0 * l2 * m.w2;
    const Eigen::MatrixXd dz =
        (delta * m.w2).array() * (1.0 - f.hidden.array().square());
    g.w1 = dz.transpose() * x + 2.0 * l2 * m.w1;
    g.b1 = dz.colwise().sum().transpose();
  } else {
    g.w2 = delta.transpose() * x + 2.0 * l2 * m.w2;
  }
  out.gradient = g.pack();
  return out;
}

MlpModel train_probe(const RowMatrix& x, const std::vector<std::string>& labels,
                     const std::vector<Split>& splits, const MlpConfig& config,
                     TrainingLog* log) {
  if (labels.size() != static_cast<std::size_t>(x.rows()) || splits.size() != labels.size()) {
    throw Error(ErrorCode::LengthMismatch, "features, labels and splits must align");
  }
  std::vector<std::string> classes;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (splits[i] == Split::Train) classes.push_back(labels[i]);
  }
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  std::map<std::string, std::size_t> class_index;
  for (std::size_t i = 0; i < classes.size(); ++i) class_index[classes[i]] = i;

  std::vector<std::size_t> train_rows, val_rows, yt, yv;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto it = class_index.find(labels[i]);
    if (it == class_index.end()) {
      throw Error(ErrorCode::ClassMissingInTrain, "class '" + labels[i] + "' has no training rows");
    }
    if (splits[i] == Split::Train) {
      train_rows.push_back(i);
      yt.push_back(it->second);
    } else if (splits[i] == Split::Validation) {
      val_rows.push_back(i);
      yv.push_back(it->second);
    }
  }
  if (train_rows.empty() || val_rows.empty()) {
    throw Error(ErrorCode::InvalidDataset, "train and validation splits must be non-empty");
  }
  if (classes.size() < 2) throw Error(ErrorCode::InvalidDataset, "need at least two classes");
  if (config.max_epochs == 0) throw Error(ErrorCode::InvalidArgument, "max_epochs must be >= 1");

  const RowMatrix xt = gather_rows(x, train_rows);
  const RowMatrix xv = gather_rows(x, val_rows);
  MlpModel best;
  best.classes = classes;
  TrainingLog local;
  TrainingLog& l = log ? *log : local;

  double lr = config.learning_rate;
  if (!fit(xt, yt, xv, yv, classes.size(), config, lr, best, l)) {
    lr /= 2.0;
    if (!fit(xt, yt, xv, yv, classes.size(), config, lr, best, l)) {
      throw Error(ErrorCode::NonFiniteLoss, "training diverged even at learning rate " +
                                                std::to_string(lr));
    }
    l.lr_halved = true;
  }
  return best;
}

std::vector<std::size_t> predict(const MlpModel& model, const Eigen::Ref<const RowMatrix>& x) {
  if (static_cast<std::size_t>(x.cols()) != model.input_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "probe expects " +
                                                  std::to_string(model.input_dim()) +
                                                  " features, got " + std::to_string(x.cols()));
  }
  const Forward f = forward(model, x);
  std::vector<std::size_t> out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < f.probs.rows(); ++i) {
    Eigen::Index arg = 0;
    f.probs.row(i).maxCoeff(&arg);
    out[static_cast<std::size_t>(i)] = static_cast<std::size_t>(arg);
  }
  return out;
}

double evaluate_probe(const MlpModel& model, const Eigen::Ref<const RowMatrix>& x,
                      const std::vector<std::string>& labels) {
  if (labels.size() != static_cast<std::size_t>(x.rows())) {
    throw Error(ErrorCode::DimensionMismatch, "one label per row is required");
  }
  if (labels.empty()) throw Error(ErrorCode::InvalidArgument, "no rows to evaluate");
  const auto pred = predict(model, x);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (model.classes[pred[i]] == labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(labels.size());
}

std::vector<double> pair_features(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw Error(ErrorCode::DimensionMismatch, "pair of unequal vectors");
  const std::size_t d = u.size();
  std::vector<double> f(4 * d);
  for (std::size_t i = 0; i < d; ++i) {
    f[i] = u[i];
    f[d + i] = v[i];
    f[2 * d + i] = std::abs(u[i] - v[i]);
    f[3 * d + i] = u[i] * v[i];
  }
  return f;
}

std::vector<EvalReport> run_task(const EmbeddingTable& table, const LabeledDataset& data,
                                 const MlpConfig& config, const std::vector<Variant>& variants) {
  std::vector<EvalReport> reports;
  if (variants.empty()) return reports;

  struct Resolved {
    std::size_t first;
    std::optional<std::size_t> second;
    const LabeledItem* item;
  };
  std::vector<Resolved> items;
  for (const auto& item : data.items) {
    const auto a = table.find(item.key);
    if (!a) continue;
    std::optional<std::size_t> b;
    if (item.is_pair()) {
      b = table.find(item.second_key);
      if (!b) continue;
    }
    items.push_back({*a, b, &item});
  }
  if (items.empty()) {
    throw Error(ErrorCode::InsufficientCoverage, data.name + ": no dataset key resolves");
  }
  const double coverage = static_cast<double>(items.size()) / static_cast<double>(data.items.size());

  for (const auto& variant : variants) {
    const EmbeddingTable t = apply_variant(table, variant);
    const std::size_t d = t.dim();
    const bool pairs = items.front().item->is_pair();
    const std::size_t width = pairs ? 4 * d : d;

    RowMatrix x(static_cast<Eigen::Index>(items.size()), static_cast<Eigen::Index>(width));
    std::vector<std::string> labels;
    std::vector<Split> splits;
    for (std::size_t i = 0; i < items.size(); ++i) {
      const auto& r = items[i];
      auto dst = x.row(static_cast<Eigen::Index>(i));
      if (r.second) {
        const auto f = pair_features(t.row(r.first), t.row(*r.second));
        for (std::size_t j = 0; j < width; ++j) dst[static_cast<Eigen::Index>(j)] = f[j];
      } else {
        const auto row = t.row(r.first);
        for (std::size_t j = 0; j < width; ++j) dst[static_cast<Eigen::Index>(j)] = row[j];
      }
      labels.push_back(r.item->label);
      splits.push_back(r.item->split);
    }

    TrainingLog log;
    const MlpModel model = train_probe(x, labels, splits, config, &log);

    std::vector<std::size_t> test_rows;
    std::vector<std::string> test_labels;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (splits[i] == Split::Test) {
        test_rows.push_back(i);
        test_labels.push_back(labels[i]);
      }
    }
    if (test_rows.empty()) throw Error(ErrorCode::InvalidDataset, data.name + " has no test items");

    EvalReport r;
    r.task = "classify:" + data.name;
    r.variant = variant.name();
    r.dim = d;
    r.metric_name = "accuracy";
    r.value = 100.0 * evaluate_probe(model, gather_rows(x, test_rows), test_labels);
    r.coverage = coverage;
    r.metadata = variant.metadata();
    for (const auto& [k, v] : config.describe()) r.metadata["mlp_" + k] = v;
    r.metadata["protocol"] = "fixed-split";
    r.metadata["best_epoch"] = std::to_string(log.best_epoch);
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace wavepress
