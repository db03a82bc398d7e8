#pragma once

#include <random>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "wavepress/datasets.hpp"
#include "wavepress/embedding.hpp"

namespace synthetic {

struct Data {
  wavepress::RowMatrix x;
  std::vector<std::string> labels;
  std::vector<wavepress::Split> splits;
};

// 3:1:1 train/validation/test by position.
inline wavepress::Split split_for(std::size_t i) {
  switch (i % 5) {
    case 3: return wavepress::Split::Validation;
    case 4: return wavepress::Split::Test;
    default: return wavepress::Split::Train;
  }
}

// Gaussian blobs around random centres (per-coordinate scale 4); rows cycle
// through the classes so every split sees all of them.
inline Data blobs(std::size_t n, std::size_t d, std::size_t classes, double spread,
                  std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::vector<std::vector<double>> centres;
  for (std::size_t c = 0; c < classes; ++c) centres.push_back(oracle::random_vector(g, d, 4.0));
  Data out;
  out.x.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = i % classes;
    const auto noise = oracle::random_vector(g, d, spread);
    for (std::size_t j = 0; j < d; ++j) {
      out.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = centres[c][j] + noise[j];
    }
    out.labels.push_back("c" + std::to_string(c));
    out.splits.push_back(split_for(i / classes));
  }
  return out;
}

inline Data xor_data(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Data out;
  out.x.resize(static_cast<Eigen::Index>(n), 2);
  for (std::size_t i = 0; i < n; ++i) {
    double a = u(g), b = u(g);
    // Keep a margin around the axes so the task is cleanly separable.
    a += a > 0 ? 0.1 : -0.1;
    b += b > 0 ? 0.1 : -0.1;
    out.x(static_cast<Eigen::Index>(i), 0) = a;
    out.x(static_cast<Eigen::Index>(i), 1) = b;
    out.labels.push_back((a > 0) == (b > 0) ? "same" : "diff");
    out.splits.push_back(split_for(i));
  }
  return out;
}

}  // namespace synthetic
