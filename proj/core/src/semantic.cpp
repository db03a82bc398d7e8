#include "wavepress/semantic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "wavepress/error.hpp"
#include "wavepress/random.hpp"
#include "wavepress/similarity.hpp"

namespace wavepress {

namespace {

bool is_zero(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

template <typename Lookup>
EvalReport score_pairs(const EmbeddingTable& table, const std::vector<ScoredPair>& pairs,
                       const std::string& task, Lookup lookup) {
  std::vector<double> model;
  std::vector<double> gold;
  for (const auto& p : pairs) {
    const auto a = lookup(p.first);
    const auto b = lookup(p.second);
    if (!a || !b) continue;
    const auto u = table.row(*a);
    const auto v = table.row(*b);
    if (is_zero(u) || is_zero(v)) continue;
    model.push_back(cosine(u, v));
    gold.push_back(p.score);
  }
  if (model.size() < 2) {
    throw Error(ErrorCode::InsufficientCoverage,
                task + ": only " + std::to_string(model.size()) + " of " +
                    std::to_string(pairs.size()) + " pairs resolve");
  }
  EvalReport r;
  r.task = task;
  r.dim = table.dim();
  r.metric_name = "spearman";
  r.value = 100.0 * spearman(model, gold);
  r.coverage = static_cast<double>(model.size()) / static_cast<double>(pairs.size());
  r.metadata["pairs_used"] = std::to_string(model.size());
  r.metadata["pairs_total"] = std::to_string(pairs.size());
  return r;
}

double squared_distance(const double* a, const double* b, std::size_t d) {
  double s = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double t = a[j] - b[j];
    s += t * t;
  }
  return s;
}

// k-means++ seeding: first centre uniform, then proportional to D^2.
RowMatrix seed_centroids(const RowMatrix& points, std::size_t k, Rng& rng) {
  const std::size_t n = static_cast<std::size_t>(points.rows());
  const std::size_t d = static_cast<std::size_t>(points.cols());
  RowMatrix centroids(static_cast<Eigen::Index>(k), points.cols());
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::size_t pick = rng.index(n);
  for (std::size_t c = 0; c < k; ++c) {
    centroids.row(static_cast<Eigen::Index>(c)) = points.row(static_cast<Eigen::Index>(pick));
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dist[i] = std::min(dist[i], squared_distance(points.data() + i * d,
                                                   centroids.data() + c * d, d));
      total += dist[i];
    }
    if (c + 1 == k) break;
    if (total <= 0.0) {
      pick = rng.index(n);
      continue;
    }
    double target = rng.uniform() * total;
    pick = n - 1;
    for (std::size_t i = 0; i < n; ++i) {
      target -= dist[i];
      if (target < 0.0) {
        pick = i;
        break;
      }
    }
  }
  return centroids;
}

KMeansResult lloyd(const RowMatrix& points, RowMatrix centroids, std::size_t max_iterations) {
  const std::size_t n = static_cast<std::size_t>(points.rows());
  const std::size_t d = static_cast<std::size_t>(points.cols());
  const std::size_t k = static_cast<std::size_t>(centroids.rows());
  KMeansResult r;
  r.assignment.assign(n, k);  // k = unassigned
  std::vector<double> best(n);

  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t arg = 0;
      double bd = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double dd = squared_distance(points.data() + i * d, centroids.data() + c * d, d);
        if (dd < bd) {
          bd = dd;
          arg = c;
        }
      }
      best[i] = bd;
      if (r.assignment[i] != arg) {
        r.assignment[i] = arg;
        changed = true;
      }
    }
    if (!changed) break;

    RowMatrix sums = RowMatrix::Zero(centroids.rows(), centroids.cols());
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sums.row(static_cast<Eigen::Index>(r.assignment[i])) += points.row(static_cast<Eigen::Index>(i));
      ++counts[r.assignment[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        centroids.row(static_cast<Eigen::Index>(c)) =
            sums.row(static_cast<Eigen::Index>(c)) / static_cast<double>(counts[c]);
        continue;
      }
      // Empty cluster: move it onto the point farthest from its centre.
      const auto far = static_cast<std::size_t>(
          std::max_element(best.begin(), best.end()) - best.begin());
      centroids.row(static_cast<Eigen::Index>(c)) = points.row(static_cast<Eigen::Index>(far));
      best[far] = 0.0;
    }
  }

  r.inertia = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    r.inertia += squared_distance(points.data() + i * d, centroids.data() + r.assignment[i] * d, d);
  }
  r.centroids = std::move(centroids);
  return r;
}

}  // namespace

EvalReport eval_word_similarity(const EmbeddingTable& table, const WordSimDataset& data) {
  auto r = score_pairs(table, data.pairs, "wordsim:" + data.name,
                       [&](const std::string& w) { return table.find_folded(w); });
  r.metadata["oov_policy"] = "skip-pair";
  return r;
}

EvalReport eval_sts(const EmbeddingTable& table, const PairIndexDataset& data) {
  return score_pairs(table, data.pairs, "sts:" + data.name,
                     [&](const std::string& k) { return table.find(k); });
}

KMeansResult kmeans(const RowMatrix& points, std::size_t k, const KMeansOptions& options) {
  const auto n = static_cast<std::size_t>(points.rows());
  if (k == 0 || k > n) {
    throw Error(ErrorCode::InvalidArgument, "k-means with k = " + std::to_string(k) + " on " +
                                                std::to_string(n) + " points");
  }
  Rng rng(options.seed);
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (std::size_t restart = 0; restart < std::max<std::size_t>(1, options.restarts); ++restart) {
    auto r = lloyd(points, seed_centroids(points, k, rng), options.max_iterations);
    if (r.inertia < best.inertia) {
      r.best_restart = restart;
      best = std::move(r);
    }
  }
  return best;
}

double purity(const std::vector<std::size_t>& assignment, const std::vector<std::string>& labels) {
  if (assignment.size() != labels.size() || assignment.empty()) {
    throw Error(ErrorCode::LengthMismatch, "assignment and labels must be non-empty and aligned");
  }
  std::map<std::size_t, std::map<std::string, std::size_t>> overlap;
  for (std::size_t i = 0; i < assignment.size(); ++i) ++overlap[assignment[i]][labels[i]];
  std::size_t majority = 0;
  for (const auto& [cluster, counts] : overlap) {
    std::size_t m = 0;
    for (const auto& [label, count] : counts) m = std::max(m, count);
    majority += m;
  }
  return static_cast<double>(majority) / static_cast<double>(assignment.size());
}

EvalReport eval_categorization(const EmbeddingTable& table, const CategorizationDataset& data,
                               std::uint64_t seed) {
  std::vector<std::size_t> rows;
  std::vector<std::string> labels;
  for (const auto& [word, category] : data.items) {
    const auto idx = table.find_folded(word);
    if (!idx || is_zero(table.row(*idx))) continue;
    rows.push_back(*idx);
    labels.push_back(category);
  }
  const std::set<std::string> categories(labels.begin(), labels.end());
  if (categories.size() < 2) {
    throw Error(ErrorCode::InsufficientCoverage,
                "categorization needs 2 categories with resolvable words, have " +
                    std::to_string(categories.size()));
  }

  RowMatrix points(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(table.dim()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto src = table.row(rows[i]);
    auto dst = points.row(static_cast<Eigen::Index>(i));
    for (std::size_t j = 0; j < src.size(); ++j) dst[static_cast<Eigen::Index>(j)] = src[j];
    dst.normalize();
  }

  KMeansOptions options;
  options.seed = seed;
  const auto result = kmeans(points, categories.size(), options);

  EvalReport r;
  r.task = "cat:" + data.name;
  r.dim = table.dim();
  r.metric_name = "purity";
  r.value = purity(result.assignment, labels);
  r.coverage = static_cast<double>(rows.size()) / static_cast<double>(data.items.size());
  r.metadata["k"] = std::to_string(categories.size());
  r.metadata["seed"] = std::to_string(seed);
  r.metadata["restarts"] = std::to_string(options.restarts);
  return r;
}

}  // namespace wavepress
