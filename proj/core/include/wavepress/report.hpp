#pragma once

#include <cstddef>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace wavepress {

/// One cell of a results table.
struct EvalReport {
  std::string task;
  std::string variant;  // "base", "cA", "cD+cAD", "pca", "dct", ...
  std::size_t dim = 0;
  std::string metric_name;
  double value = 0.0;
  double coverage = 1.0;
  std::map<std::string, std::string> metadata;
  std::string status = "ok";  // "ok" or "error"
  std::string message;

  bool ok() const noexcept { return status == "ok"; }
};

/// Stable sort by (task, variant, dim).
void sort_reports(std::vector<EvalReport>& reports);

void write_reports_tsv(std::ostream& out, const std::vector<EvalReport>& reports);
void write_reports_table(std::ostream& out, const std::vector<EvalReport>& reports);
/// One JSON object per line.
void write_reports_jsonl(std::ostream& out, const std::vector<EvalReport>& reports);

}  // namespace wavepress
