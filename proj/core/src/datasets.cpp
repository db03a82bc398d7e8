#include "wavepress/datasets.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string_view>

#include "text_util.hpp"
#include "wavepress/error.hpp"

namespace wavepress {

namespace {

enum class LineResult { Ok, Malformed, BadValue };

// Feeds every non-comment line, split on tabs, to `handle`. Enforces the
// header rule for lines whose value field fails to parse.
std::size_t for_each_record(const std::filesystem::path& path, ErrorCode bad_value_code,
                            const std::function<LineResult(std::vector<std::string_view>&)>& handle) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::size_t malformed = 0;
  std::size_t line_no = 0;
  bool first_record = true;
  std::string line;
  std::vector<std::string_view> fields;
  while (std::getline(in, line)) {
    ++line_no;
    detail::strip_cr(line);
    if (detail::trim(line).empty() || line.front() == '#') continue;
    detail::split_char(line, '\t', fields);
    for (auto& f : fields) f = detail::trim(f);
    const LineResult r = handle(fields);
    if (r == LineResult::Malformed) {
      ++malformed;
    } else if (r == LineResult::BadValue) {
      if (!first_record) {
        throw Error(bad_value_code, path.string() + ":" + std::to_string(line_no) + ": '" +
                                        line + "'");
      }
      ++malformed;
    }
    first_record = false;
  }
  return malformed;
}

std::optional<Split> parse_split(std::string_view s) {
  const std::string v = detail::lower(s);
  if (v == "train") return Split::Train;
  if (v == "validation" || v == "val" || v == "dev") return Split::Validation;
  if (v == "test") return Split::Test;
  return std::nullopt;
}

std::vector<ScoredPair> load_scored(const std::filesystem::path& path, std::size_t& malformed) {
  std::vector<ScoredPair> pairs;
  malformed = for_each_record(path, ErrorCode::NonNumericScore, [&](auto& f) {
    if (f.size() != 3 || f[0].empty() || f[1].empty()) return LineResult::Malformed;
    double score = 0.0;
    if (!detail::parse_double(f[2], score)) return LineResult::BadValue;
    if (!std::isfinite(score)) return LineResult::BadValue;
    pairs.push_back({std::string(f[0]), std::string(f[1]), score});
    return LineResult::Ok;
  });
  if (pairs.empty()) throw Error(ErrorCode::EmptyDataset, path.string() + " has no pairs");
  if (pairs.size() < 2) {
    throw Error(ErrorCode::InvalidDataset, path.string() + " needs at least 2 scored pairs");
  }
  return pairs;
}

}  // namespace

std::size_t CategorizationDataset::category_count() const {
  std::set<std::string_view> cats;
  for (const auto& [word, cat] : items) cats.insert(cat);
  return cats.size();
}

std::vector<std::string> LabeledDataset::classes() const {
  std::set<std::string> labels;
  for (const auto& item : items) labels.insert(item.label);
  return {labels.begin(), labels.end()};
}

WordSimDataset load_wordsim(const std::filesystem::path& path) {
  WordSimDataset d;
  d.name = path.stem().string();
  d.pairs = load_scored(path, d.malformed);
  return d;
}

PairIndexDataset load_pairs(const std::filesystem::path& path) {
  PairIndexDataset d;
  d.name = path.stem().string();
  d.pairs = load_scored(path, d.malformed);
  return d;
}

CategorizationDataset load_categorization(const std::filesystem::path& path) {
  CategorizationDataset d;
  d.name = path.stem().string();
  d.malformed = for_each_record(path, ErrorCode::InvalidDataset, [&](auto& f) {
    if (f.size() != 2 || f[0].empty() || f[1].empty()) return LineResult::Malformed;
    d.items.emplace_back(std::string(f[0]), std::string(f[1]));
    return LineResult::Ok;
  });
  if (d.items.empty()) throw Error(ErrorCode::EmptyDataset, path.string() + " has no items");
  if (d.category_count() < 2) {
    throw Error(ErrorCode::InvalidDataset, path.string() + " needs at least 2 categories");
  }
  return d;
}

LabeledDataset load_labeled(const std::filesystem::path& path) {
  LabeledDataset d;
  d.name = path.stem().string();
  d.malformed = for_each_record(path, ErrorCode::InvalidDataset, [&](auto& f) {
    if (f.size() != 3 && f.size() != 4) return LineResult::Malformed;
    for (const auto& field : f) {
      if (field.empty()) return LineResult::Malformed;
    }
    const auto split = parse_split(f.back());
    if (!split) return LineResult::BadValue;
    LabeledItem item;
    item.key = std::string(f[0]);
    if (f.size() == 4) item.second_key = std::string(f[1]);
    item.label = std::string(f[f.size() - 2]);
    item.split = *split;
    d.items.push_back(std::move(item));
    return LineResult::Ok;
  });
  if (d.items.empty()) throw Error(ErrorCode::EmptyDataset, path.string() + " has no items");

  std::map<std::pair<std::string, std::string>, Split> split_of;
  std::set<std::string> train_labels;
  for (const auto& item : d.items) {
    auto [it, inserted] = split_of.emplace(std::pair{item.key, item.second_key}, item.split);
    if (!inserted && it->second != item.split) {
      throw Error(ErrorCode::InvalidDataset, "item '" + item.key + "' appears in two splits");
    }
    if (item.split == Split::Train) train_labels.insert(item.label);
  }
  for (const auto& label : d.classes()) {
    if (!train_labels.contains(label)) {
      throw Error(ErrorCode::ClassMissingInTrain, "class '" + label + "' has no training items");
    }
  }
  return d;
}

}  // namespace wavepress
