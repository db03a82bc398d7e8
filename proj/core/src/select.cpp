#include "wavepress/select.hpp"

#include <algorithm>
#include <cctype>
#include <thread>

#include "wavepress/error.hpp"

namespace wavepress {

namespace {

std::string normalize(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '_' || c == ' ') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

// Branch lengths after each decomposition step; throws if a step would start
// from fewer than two samples.
std::vector<std::size_t> level_lengths(std::size_t original_dim, std::size_t depth,
                                       PaddingMode mode, std::size_t filter_length) {
  std::vector<std::size_t> lengths{original_dim};
  for (std::size_t k = 0; k < depth; ++k) {
    if (lengths.back() < 2) {
      throw Error(ErrorCode::InsufficientDepth,
                  "dimension " + std::to_string(original_dim) + " cannot be decomposed to " +
                      std::to_string(depth) + " levels");
    }
    lengths.push_back(subband_length(lengths.back(), filter_length, mode));
  }
  return lengths;
}

}  // namespace

Selector parse_selector(std::string_view name) {
  const std::string s = normalize(name);
  if (s == "ca") return Selector::CA;
  if (s == "cd") return Selector::CD;
  if (s == "caa") return Selector::CAA;
  if (s == "cda") return Selector::CDA;
  if (s == "caaa") return Selector::CAAA;
  if (s == "caaaa") return Selector::CAAAA;
  if (s == "ca+cda" || s == "capluscda") return Selector::CA_PLUS_CDA;
  if (s == "cd+cad" || s == "cdpluscad") return Selector::CD_PLUS_CAD;
  throw Error(ErrorCode::InvalidArgument, "unknown selector '" + std::string(name) + "'");
}

std::string selector_name(Selector s) {
  switch (s) {
    case Selector::CA: return "cA";
    case Selector::CD: return "cD";
    case Selector::CAA: return "cAA";
    case Selector::CDA: return "cDA";
    case Selector::CAAA: return "cAAA";
    case Selector::CAAAA: return "cAAAA";
    case Selector::CA_PLUS_CDA: return "cA+cDA";
    case Selector::CD_PLUS_CAD: return "cD+cAD";
  }
  return "?";
}

std::vector<Selector> all_selectors() {
  return {Selector::CA,   Selector::CD,    Selector::CAA,         Selector::CDA,
          Selector::CAAA, Selector::CAAAA, Selector::CA_PLUS_CDA, Selector::CD_PLUS_CAD};
}

std::size_t required_depth(Selector s) noexcept {
  switch (s) {
    case Selector::CA:
    case Selector::CD:
      return 1;
    case Selector::CAA:
    case Selector::CDA:
    case Selector::CA_PLUS_CDA:
    case Selector::CD_PLUS_CAD:
      return 2;
    case Selector::CAAA:
      return 3;
    case Selector::CAAAA:
      return 4;
  }
  return 0;
}

std::vector<std::string> selector_branches(Selector s) {
  switch (s) {
    case Selector::CA: return {"A"};
    case Selector::CD: return {"D"};
    case Selector::CAA: return {"AA"};
    case Selector::CDA: return {"DA"};
    case Selector::CAAA: return {"AAA"};
    case Selector::CAAAA: return {"AAAA"};
    case Selector::CA_PLUS_CDA: return {"A", "DA"};
    case Selector::CD_PLUS_CAD: return {"D", "AD"};
  }
  return {};
}

std::string CompressionConfig::describe() const {
  return wavelet.name() + "/" + std::string(mode_name(mode)) + "/" + selector_name(selector);
}

std::vector<double> select(const CoefficientTree& tree, Selector s) {
  if (tree.depth() < required_depth(s)) {
    throw Error(ErrorCode::InsufficientDepth,
                selector_name(s) + " needs depth " + std::to_string(required_depth(s)) +
                    ", tree has " + std::to_string(tree.depth()));
  }
  std::vector<double> out;
  for (const auto& label : selector_branches(s)) {
    const auto b = tree.branch(label);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

std::size_t compressed_dim(std::size_t original_dim, Selector s, PaddingMode mode,
                           std::size_t filter_length) {
  const auto lengths = level_lengths(original_dim, required_depth(s), mode, filter_length);
  std::size_t total = 0;
  for (const auto& label : selector_branches(s)) total += lengths[label.size()];
  return total;
}

std::size_t compressed_dim(std::size_t original_dim, const CompressionConfig& c) {
  return compressed_dim(original_dim, c.selector, c.mode, c.wavelet.filter_length());
}

double compression_ratio(std::size_t original_dim, Selector s, PaddingMode mode) {
  if (mode != PaddingMode::Periodization) {
    throw Error(ErrorCode::InvalidArgument,
                "output length in mode " + std::string(mode_name(mode)) +
                    " depends on the wavelet; pass it explicitly");
  }
  return static_cast<double>(compressed_dim(original_dim, s, mode, 2)) /
         static_cast<double>(original_dim);
}

double compression_ratio(std::size_t original_dim, Selector s, PaddingMode mode,
                         const WaveletFamily& w) {
  return static_cast<double>(compressed_dim(original_dim, s, mode, w.filter_length())) /
         static_cast<double>(original_dim);
}

RowCompressor::RowCompressor(const CompressionConfig& config, std::size_t input_dim)
    : config_(config),
      filters_(get_filters(config.wavelet)),
      input_dim_(input_dim),
      output_dim_(0),
      branches_(selector_branches(config.selector)) {
  const std::size_t depth = config.levels();
  std::vector<std::size_t> lengths;
  try {
    lengths = level_lengths(input_dim, depth, config.mode, filters_.length());
  } catch (const Error& e) {
    throw Error(ErrorCode::TooManyLevels, e.what());
  }
  for (const auto& label : branches_) output_dim_ += lengths[label.size()];
  level1_.resize(2 * lengths[1]);
  for (std::size_t k = 2; k <= depth; ++k) {
    scratch_.emplace_back(lengths[k]);
    scratch_.emplace_back(lengths[k]);
  }
}

void RowCompressor::compress(std::span<const double> in, std::span<double> out) {
  if (in.size() != input_dim_ || out.size() != output_dim_) {
    throw Error(ErrorCode::DimensionMismatch,
                "compressor built for " + std::to_string(input_dim_) + " -> " +
                    std::to_string(output_dim_));
  }
  const std::size_t half = level1_.size() / 2;
  std::span<double> l1(level1_);
  dwt_level_into(in, filters_, config_.mode, l1.first(half), l1.last(half));

  std::size_t offset = 0;
  for (const auto& label : branches_) {
    std::span<const double> current = label[0] == 'A' ? l1.first(half) : l1.last(half);
    for (std::size_t k = 1; k < label.size(); ++k) {
      auto& a = scratch_[2 * (k - 1)];
      auto& d = scratch_[2 * (k - 1) + 1];
      dwt_level_into(current, filters_, config_.mode, a, d);
      current = label[k] == 'A' ? std::span<const double>(a) : std::span<const double>(d);
    }
    std::copy(current.begin(), current.end(), out.begin() + static_cast<std::ptrdiff_t>(offset));
    offset += current.size();
  }
}

EmbeddingTable compress_table(const EmbeddingTable& table, const CompressionConfig& c,
                              std::size_t jobs) {
  if (table.empty()) throw Error(ErrorCode::EmptyTable, "cannot compress an empty table");
  const std::size_t rows = table.size();
  RowCompressor probe(c, table.dim());
  RowMatrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(probe.output_dim()));

  auto run_range = [&](std::size_t begin, std::size_t end) {
    RowCompressor compressor(c, table.dim());
    for (std::size_t i = begin; i < end; ++i) {
      compressor.compress(table.row(i),
                          std::span<double>(out.data() + i * compressor.output_dim(),
                                            compressor.output_dim()));
    }
  };

  jobs = std::clamp<std::size_t>(jobs, 1, rows);
  if (jobs == 1) {
    run_range(0, rows);
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (rows + jobs - 1) / jobs;
    for (std::size_t begin = 0; begin < rows; begin += chunk) {
      workers.emplace_back(run_range, begin, std::min(rows, begin + chunk));
    }
  }
  return EmbeddingTable(table.keys(), std::move(out));
}

}  // namespace wavepress
