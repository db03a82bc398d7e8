#include "wavepress/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wavepress/error.hpp"

namespace wavepress {

namespace {

double dot(std::span<const double> u, std::span<const double> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

}  // namespace

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw Error(ErrorCode::DimensionMismatch, "cosine of vectors of sizes " +
                                                  std::to_string(u.size()) + " and " +
                                                  std::to_string(v.size()));
  }
  const double nu = dot(u, u);
  const double nv = dot(v, v);
  if (nu == 0.0 || nv == 0.0) throw Error(ErrorCode::ZeroVector, "cosine of a zero vector");
  const double c = dot(u, v) / (std::sqrt(nu) * std::sqrt(nv));
  return std::clamp(c, -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && xs[order[j]] == xs[order[i]]) ++j;
    // Positions i..j-1 (0-based) hold ranks i+1..j.
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) ranks[order[t]] = rank;
    i = j;
  }
  return ranks;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(ErrorCode::LengthMismatch, "series lengths differ");
  if (xs.size() < 2) throw Error(ErrorCode::DegenerateInput, "need at least two points");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw Error(ErrorCode::DegenerateInput, "constant series");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(ErrorCode::LengthMismatch, "series lengths differ");
  if (xs.size() < 2) throw Error(ErrorCode::DegenerateInput, "need at least two points");
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  // Identical or mirrored rankings are exactly +-1; the floating-point
  // quotient below can miss by an ulp.
  const double mirror = static_cast<double>(xs.size()) + 1.0;
  bool same = true;
  bool reversed = true;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    same = same && rx[i] == ry[i];
    reversed = reversed && rx[i] + ry[i] == mirror;
  }
  if (same || reversed) {
    const bool constant = std::all_of(rx.begin(), rx.end(), [&](double r) { return r == rx[0]; });
    if (constant) throw Error(ErrorCode::DegenerateInput, "constant series");
    return same ? 1.0 : -1.0;
  }
  return pearson(rx, ry);
}

std::vector<Neighbor> knn(const EmbeddingTable& table, const std::string& query_key,
                          std::size_t k, bool include_self) {
  const auto query = table.find(query_key);
  if (!query) throw Error(ErrorCode::UnknownKey, "'" + query_key + "' is not in the table");
  const std::size_t limit = include_self ? table.size() : table.size() - 1;
  if (k == 0 || k > limit) {
    throw Error(ErrorCode::InvalidArgument, "k = " + std::to_string(k) + " outside [1, " +
                                                std::to_string(limit) + "]");
  }
  const auto q = table.row(*query);
  const double qn = std::sqrt(dot(q, q));
  if (qn == 0.0) throw Error(ErrorCode::ZeroVector, "query vector is zero");

  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!include_self && i == *query) continue;
    const auto r = table.row(i);
    const double rn = std::sqrt(dot(r, r));
    if (rn == 0.0) continue;
    const double sim = i == *query ? 1.0 : std::clamp(dot(q, r) / (qn * rn), -1.0, 1.0);
    scored.emplace_back(sim, i);
  }
  k = std::min(k, scored.size());
  const std::size_t self = *query;
  auto better = [self](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    if ((a.second == self) != (b.second == self)) return a.second == self;
    return a.second < b.second;
  };
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(k), scored.end(),
                    better);
  std::vector<Neighbor> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    out.push_back({table.keys()[scored[i].second], scored[i].first});
  }
  return out;
}

RowMatrix similarity_matrix(const EmbeddingTable& a, const EmbeddingTable& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "tables have dimensions " + std::to_string(a.dim()) +
                                                  " and " + std::to_string(b.dim()));
  }
  const Eigen::VectorXd na = a.matrix().rowwise().norm();
  const Eigen::VectorXd nb = b.matrix().rowwise().norm();
  if ((na.array() == 0.0).any() || (nb.array() == 0.0).any()) {
    throw Error(ErrorCode::ZeroVector, "similarity matrix over a zero row");
  }
  RowMatrix m = a.matrix() * b.matrix().transpose();
  m.array().colwise() /= na.array();
  m.array().rowwise() /= nb.transpose().array();
  return m.cwiseMax(-1.0).cwiseMin(1.0);
}

void write_similarity_tsv(std::ostream& out, const EmbeddingTable& a, const EmbeddingTable& b,
                          const RowMatrix& m) {
  out << "key";
  for (const auto& key : b.keys()) out << '\t' << key;
  out << '\n';
  for (std::size_t i = 0; i < a.size(); ++i) {
    out << a.keys()[i];
    for (std::size_t j = 0; j < b.size(); ++j) {
      out << '\t' << m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    out << '\n';
  }
}

}  // namespace wavepress
