#include "wavepress/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace wavepress {

namespace {

std::string format_value(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << v;
  return s.str();
}

std::string format_metadata(const std::map<std::string, std::string>& meta) {
  std::string out;
  for (const auto& [k, v] : meta) {
    if (!out.empty()) out += ';';
    out += k + '=' + v;
  }
  return out;
}

// Keeps one report per line and one field per column.
std::string tsv_field(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');
  return s;
}

}  // namespace

void sort_reports(std::vector<EvalReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
    return std::tie(a.task, a.variant, a.dim) < std::tie(b.task, b.variant, b.dim);
  });
}

void write_reports_tsv(std::ostream& out, const std::vector<EvalReport>& reports) {
  out << "task\tvariant\tdim\tmetric\tvalue\tcoverage\tstatus\tmetadata\tmessage\n";
  for (const auto& r : reports) {
    out << r.task << '\t' << r.variant << '\t' << r.dim << '\t' << r.metric_name << '\t'
        << (r.ok() ? format_value(r.value) : "") << '\t' << format_value(r.coverage) << '\t'
        << r.status << '\t' << tsv_field(format_metadata(r.metadata)) << '\t' << tsv_field(r.message)
        << '\n';
  }
}

void write_reports_table(std::ostream& out, const std::vector<EvalReport>& reports) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"task", "variant", "dim", "metric", "value", "coverage", "status", "details"});
  for (const auto& r : reports) {
    // Only the keys that tell rows of one variant apart; the rest is in TSV/JSON.
    std::string details;
    for (const char* key : {"rank", "neighbor", "wavelet", "mode", "pca_k", "dct_keep"}) {
      const auto it = r.metadata.find(key);
      if (it == r.metadata.end()) continue;
      if (!details.empty()) details += ' ';
      details += std::string(key) + '=' + it->second;
    }
    if (!r.ok()) details += (details.empty() ? "" : " ") + r.message;
    rows.push_back({r.task, r.variant, std::to_string(r.dim), r.metric_name,
                    r.ok() ? format_value(r.value) : "-", format_value(r.coverage), r.status,
                    details});
  }
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      // Left-align text columns, right-align numbers.
      const bool numeric = c == 2 || c == 4 || c == 5;
      if (c + 1 == row.size()) {
        out << row[c] << '\n';
        break;
      }
      out << (numeric ? std::right : std::left) << std::setw(static_cast<int>(width[c])) << row[c]
          << "  ";
    }
  }
  out << std::left;
}

void write_reports_jsonl(std::ostream& out, const std::vector<EvalReport>& reports) {
  for (const auto& r : reports) {
    nlohmann::json j = {{"task", r.task},         {"variant", r.variant},
                        {"dim", r.dim},           {"metric", r.metric_name},
                        {"coverage", r.coverage}, {"metadata", r.metadata},
                        {"status", r.status}};
    if (r.ok()) {
      j["value"] = r.value;
    } else {
      j["message"] = r.message;
    }
    out << j.dump() << '\n';
  }
}

}  // namespace wavepress
