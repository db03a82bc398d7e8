#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "CLI11.hpp"
#include "wavepress/datasets.hpp"
#include "wavepress/embedding_io.hpp"
#include "wavepress/error.hpp"
#include "wavepress/probe.hpp"
#include "wavepress/report.hpp"
#include "wavepress/semantic.hpp"
#include "wavepress/similarity.hpp"
#include "wavepress/variant.hpp"

namespace wavepress::cli {

std::vector<CompressionConfig> SweepSpec::cells() const {
  std::vector<CompressionConfig> out;
  out.reserve(size());
  for (const auto& w : wavelets) {
    for (const auto s : selectors) {
      for (const auto m : modes) out.push_back({w, m, s});
    }
  }
  return out;
}

std::size_t resolve_jobs(std::size_t flag_value) {
  if (const char* env = std::getenv("WAVEPRESS_JOBS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) {
      throw Error(ErrorCode::InvalidArgument, "WAVEPRESS_JOBS must be a positive integer");
    }
    return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, flag_value);
}

namespace {

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string join(const std::vector<std::string>& parts, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += parts[i];
  }
  return s;
}

struct Options {
  std::string emb;
  std::string emb2;
  std::string data;
  std::string input;
  std::string output;
  std::string report;
  std::string task;
  std::string query;
  std::vector<std::string> wavelets;
  std::vector<std::string> modes;
  std::vector<std::string> selectors;
  std::vector<std::string> baselines;
  std::optional<std::size_t> pca_k;
  std::optional<double> dct_keep;
  std::size_t neighbors = 5;
  std::size_t dim = 0;
  bool no_base = false;
  bool with_base = false;
  bool json = false;
  bool exclude_self = false;
  bool full_vocab = false;
  std::uint64_t seed = 42;
  std::size_t jobs = 1;

  std::size_t hidden = 50;
  double l2 = 1e-4;
  std::size_t batch = 64;
  std::size_t epochs = 200;
  std::size_t patience = 5;
  double lr = 1e-3;
  std::string optimizer = "adam";
};

void add_variant_flags(CLI::App* app, Options& o) {
  app->add_option("--wavelet", o.wavelets, "haar, dbN, symN, coifN (comma-separated)")
      ->delimiter(',');
  app->add_option("--mode", o.modes, "per, sym, zero (comma-separated)")->delimiter(',');
  app->add_option("--select", o.selectors, "cA, cD, cAA, cDA, cAAA, cAAAA, cA+cDA, cD+cAD")
      ->delimiter(',');
  app->add_option("--baseline", o.baselines, "pca[:K] or dct[:FRACTION]; repeatable");
}

void add_pca_dct_defaults(CLI::App* app, Options& o) {
  app->add_option("--k", o.pca_k, "PCA components for a bare --baseline pca");
  app->add_option("--keep", o.dct_keep, "DCT keep fraction for a bare --baseline dct");
}

void add_output_flags(CLI::App* app, Options& o) {
  app->add_option("--report", o.report, "write the result rows as TSV");
  app->add_flag("--json", o.json, "print JSON lines instead of a table");
  app->add_option("--seed", o.seed, "random seed")->capture_default_str();
  app->add_option("--jobs", o.jobs, "parallel workers (WAVEPRESS_JOBS overrides)")
      ->capture_default_str();
}

void add_mlp_flags(CLI::App* app, Options& o) {
  app->add_option("--hidden", o.hidden, "hidden units (0 = logistic regression)")
      ->capture_default_str();
  app->add_option("--l2", o.l2, "weight decay")->capture_default_str();
  app->add_option("--batch", o.batch, "mini-batch size")->capture_default_str();
  app->add_option("--epochs", o.epochs, "maximum epochs")->capture_default_str();
  app->add_option("--patience", o.patience, "early-stopping patience")->capture_default_str();
  app->add_option("--lr", o.lr, "learning rate")->capture_default_str();
  app->add_option("--optimizer", o.optimizer, "adam or sgd")->capture_default_str();
}

std::vector<PaddingMode> resolve_modes(const Options& o) {
  std::vector<PaddingMode> modes;
  for (const auto& m : o.modes) modes.push_back(parse_mode(m));
  if (modes.empty()) modes.push_back(PaddingMode::Periodization);
  return modes;
}

std::vector<WaveletFamily> resolve_wavelets(const Options& o) {
  std::vector<WaveletFamily> ws;
  for (const auto& w : o.wavelets) ws.push_back(WaveletFamily::parse(w));
  if (ws.empty()) ws.push_back(WaveletFamily::haar());
  return ws;
}

std::vector<Selector> resolve_selectors(const Options& o) {
  std::vector<Selector> ss;
  for (const auto& s : o.selectors) ss.push_back(parse_selector(s));
  return ss;
}

std::vector<Variant> resolve_variants(const Options& o, bool include_base) {
  std::vector<Variant> vs;
  if (include_base) vs.push_back(Variant::base());
  const auto selectors = resolve_selectors(o);
  if (!selectors.empty()) {
    SweepSpec spec{resolve_wavelets(o), selectors, resolve_modes(o)};
    for (const auto& c : spec.cells()) vs.push_back(Variant::dwt(c));
  }
  for (const auto& b : o.baselines) vs.push_back(parse_baseline(b, o.pca_k, o.dct_keep));
  return vs;
}

std::string describe_variant(const Variant& v) {
  switch (v.kind) {
    case Variant::Kind::Base: return "base";
    case Variant::Kind::Wavelet: return v.wavelet.describe();
    case Variant::Kind::Pca: return "pca:" + std::to_string(v.pca_k);
    case Variant::Kind::Dct: {
      std::ostringstream s;
      s << "dct:" << v.dct_keep;
      return s.str();
    }
  }
  return "?";
}

MlpConfig resolve_mlp(const Options& o) {
  MlpConfig c;
  c.hidden_units = o.hidden;
  c.l2 = o.l2;
  c.batch_size = o.batch;
  c.max_epochs = o.epochs;
  c.patience = o.patience;
  c.learning_rate = o.lr;
  c.seed = o.seed;
  const auto opt = lower(o.optimizer);
  if (opt == "adam") {
    c.optimizer = Optimizer::Adam;
  } else if (opt == "sgd") {
    c.optimizer = Optimizer::Sgd;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown optimizer '" + o.optimizer + "'");
  }
  return c;
}

void print_header(std::ostream& out, const std::string& command,
                  const std::vector<std::pair<std::string, std::string>>& config) {
  out << "# wavepress " << kVersion << "\n";
  out << "# command: " << command << "\n";
  for (const auto& [k, v] : config) out << "# " << k << ": " << v << "\n";
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads; results land by index.
template <typename Fn>
void run_cells(std::size_t n, std::size_t jobs, Fn fn) {
  jobs = std::min(jobs, n);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

using Evaluator = std::function<EvalReport(const EmbeddingTable&, const Variant&)>;

struct TaskSetup {
  std::string task;  // report task prefix for error rows
  Evaluator evaluate;
  std::vector<std::pair<std::string, std::string>> header;
};

std::unordered_set<std::string> folded_vocabulary(const std::vector<std::string>& words) {
  std::unordered_set<std::string> v;
  for (const auto& w : words) {
    v.insert(w);
    v.insert(lower(w));
  }
  return v;
}

EmbeddingTable load_table(const Options& o, const std::vector<std::string>* vocab_words) {
  WordVectorOptions wo;
  std::unordered_set<std::string> vocab;
  if (vocab_words && !o.full_vocab) {
    vocab = folded_vocabulary(*vocab_words);
    wo.vocabulary = &vocab;
  }
  return load_embeddings(o.emb, wo);
}

// Loads the table and dataset for one task and returns the per-variant scorer.
std::pair<EmbeddingTable, TaskSetup> setup_task(const std::string& task, const Options& o) {
  TaskSetup s;
  s.header.push_back({"embeddings", o.emb});
  s.header.push_back({"data", o.data});
  if (task == "wordsim") {
    auto data = load_wordsim(o.data);
    std::vector<std::string> words;
    for (const auto& p : data.pairs) {
      words.push_back(p.first);
      words.push_back(p.second);
    }
    auto table = load_table(o, &words);
    s.task = "wordsim:" + data.name;
    s.header.push_back({"vocabulary", o.full_vocab ? "full" : "dataset"});
    s.evaluate = [data = std::move(data)](const EmbeddingTable& t, const Variant& v) {
      return eval_word_similarity(apply_variant(t, v), data);
    };
    return {std::move(table), std::move(s)};
  }
  if (task == "cat") {
    auto data = load_categorization(o.data);
    std::vector<std::string> words;
    for (const auto& item : data.items) words.push_back(item.first);
    auto table = load_table(o, &words);
    s.task = "cat:" + data.name;
    s.header.push_back({"vocabulary", o.full_vocab ? "full" : "dataset"});
    s.evaluate = [data = std::move(data), seed = o.seed](const EmbeddingTable& t,
                                                          const Variant& v) {
      return eval_categorization(apply_variant(t, v), data, seed);
    };
    return {std::move(table), std::move(s)};
  }
  if (task == "sts") {
    auto data = load_pairs(o.data);
    auto table = load_table(o, nullptr);
    s.task = "sts:" + data.name;
    s.evaluate = [data = std::move(data)](const EmbeddingTable& t, const Variant& v) {
      return eval_sts(apply_variant(t, v), data);
    };
    return {std::move(table), std::move(s)};
  }
  if (task == "classify") {
    auto data = load_labeled(o.data);
    auto table = load_table(o, nullptr);
    const MlpConfig config = resolve_mlp(o);
    s.task = "classify:" + data.name;
    for (const auto& [k, v] : config.describe()) s.header.push_back({"mlp_" + k, v});
    s.evaluate = [data = std::move(data), config](const EmbeddingTable& t, const Variant& v) {
      return run_task(t, data, config, {v}).front();
    };
    return {std::move(table), std::move(s)};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown task '" + task + "'");
}

EvalReport run_cell(const EmbeddingTable& table, const TaskSetup& setup, const Variant& v) {
  EvalReport r;
  try {
    r = setup.evaluate(table, v);
  } catch (const std::exception& e) {
    r = EvalReport{};
    r.task = setup.task;
    r.status = "error";
    r.message = e.what();
    r.value = 0.0;
    r.coverage = 0.0;
    if (v.kind == Variant::Kind::Wavelet) {
      try {
        r.dim = compressed_dim(table.dim(), v.wavelet);
      } catch (const Error&) {
        r.dim = 0;
      }
    }
  }
  r.variant = v.name();
  for (const auto& [k, val] : v.metadata()) r.metadata[k] = val;
  return r;
}

bool any_ok(const std::vector<EvalReport>& rows) {
  return std::any_of(rows.begin(), rows.end(), [](const EvalReport& r) { return r.ok(); });
}

void emit(std::ostream& out, const Options& o, const std::vector<EvalReport>& rows,
          const std::string& title = {}) {
  if (!title.empty() && !o.json) out << "# " << title << "\n";
  if (o.json) {
    write_reports_jsonl(out, rows);
  } else {
    write_reports_table(out, rows);
  }
}

void write_report_file(const Options& o, const std::string& header_text,
                       const std::vector<EvalReport>& rows,
                       const std::vector<EvalReport>& summary = {}) {
  if (o.report.empty()) return;
  std::ofstream f(o.report, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot write report " + o.report);
  f << header_text;
  write_reports_tsv(f, rows);
  if (!summary.empty()) {
    f << "# best per selector\n";
    write_reports_tsv(f, summary);
  }
  if (!f) throw Error(ErrorCode::Io, "failed writing report " + o.report);
}

// ---------------------------------------------------------------------------

int cmd_info(const Options& o, std::ostream& out) {
  print_header(out, "info", {});
  out << "wavelets:";
  for (const auto& w : all_wavelets()) out << ' ' << w.name() << '(' << w.filter_length() << ')';
  out << "\nmodes: per sym zero\nselectors:";
  for (const auto s : all_selectors()) out << ' ' << selector_name(s);
  out << "\n";

  std::size_t dim = o.dim;
  if (!o.emb.empty()) {
    const bool binary = has_emb1_magic(o.emb);
    const auto table = load_embeddings(o.emb);
    out << "file: " << o.emb << "\nformat: " << (binary ? "EMB1" : "word-vectors")
        << "\nrows: " << table.size() << "\ndim: " << table.dim() << "\n";
    dim = table.dim();
  }
  if (dim > 0) {
    const auto wavelets = resolve_wavelets(o);
    const auto modes = resolve_modes(o);
    out << "compressed dims for d=" << dim << ":\n";
    for (const auto& w : wavelets) {
      for (const auto m : modes) {
        out << "  " << w.name() << '/' << mode_name(m) << ':';
        for (const auto s : all_selectors()) {
          out << ' ' << selector_name(s) << '=';
          try {
            out << compressed_dim(dim, s, m, w.filter_length());
          } catch (const Error&) {
            out << '-';
          }
        }
        out << "\n";
      }
    }
  }
  return 0;
}

int cmd_compress(const Options& o, std::ostream& out) {
  const std::size_t jobs = resolve_jobs(o.jobs);
  Variant v;
  if (!o.baselines.empty()) {
    if (o.baselines.size() > 1 || !o.selectors.empty()) {
      throw Error(ErrorCode::InvalidArgument, "compress takes one --select or one --baseline");
    }
    v = parse_baseline(o.baselines.front(), o.pca_k, o.dct_keep);
  } else {
    if (o.selectors.size() > 1 || o.wavelets.size() > 1 || o.modes.size() > 1) {
      throw Error(ErrorCode::InvalidArgument, "compress takes a single wavelet, mode and selector");
    }
    CompressionConfig c;
    c.wavelet = resolve_wavelets(o).front();
    c.mode = resolve_modes(o).front();
    c.selector = o.selectors.empty() ? Selector::CA : parse_selector(o.selectors.front());
    v = Variant::dwt(c);
  }
  print_header(out, "compress", {{"input", o.input}, {"output", o.output},
                                 {"config", describe_variant(v)}, {"seed", std::to_string(o.seed)},
                                 {"jobs", std::to_string(jobs)}});

  const auto table = load_embeddings(o.input);
  const auto start = std::chrono::steady_clock::now();
  const auto compressed = apply_variant(table, v, jobs);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  save_matrix(compressed, o.output);

  const double ratio =
      static_cast<double>(compressed.dim()) / static_cast<double>(table.dim());
  out << "rows          " << table.size() << "\n"
      << "original_dim  " << table.dim() << "\n"
      << "new_dim       " << compressed.dim() << "\n"
      << "ratio         " << std::setprecision(6) << ratio << "\n"
      << "wall_time_s   " << std::setprecision(6) << seconds << "\n"
      << "rows_per_s    " << std::fixed << std::setprecision(0)
      << (seconds > 0 ? static_cast<double>(table.size()) / seconds : 0.0) << "\n";
  out.unsetf(std::ios::floatfield);
  return 0;
}

int cmd_eval(const std::string& task, const Options& o, std::ostream& out) {
  const std::size_t jobs = resolve_jobs(o.jobs);
  const auto variants = resolve_variants(o, !o.no_base);
  if (variants.empty()) throw Error(ErrorCode::InvalidArgument, "no variants to evaluate");

  auto [table, setup] = setup_task(task, o);
  std::vector<std::string> names;
  for (const auto& v : variants) names.push_back(describe_variant(v));
  auto header = setup.header;
  header.push_back({"variants", join(names)});
  header.push_back({"seed", std::to_string(o.seed)});
  header.push_back({"jobs", std::to_string(jobs)});
  std::ostringstream head;
  print_header(head, "eval " + task, header);
  out << head.str();

  std::vector<EvalReport> rows(variants.size());
  run_cells(variants.size(), jobs, [&](std::size_t i) { rows[i] = run_cell(table, setup, variants[i]); });
  sort_reports(rows);
  emit(out, o, rows);
  write_report_file(o, head.str(), rows);
  return any_ok(rows) ? 0 : 1;
}

int cmd_knn(const Options& o, std::ostream& out) {
  const auto variants = resolve_variants(o, !o.no_base);
  if (o.query.empty()) throw Error(ErrorCode::InvalidArgument, "knn needs --query");
  std::vector<std::string> names;
  for (const auto& v : variants) names.push_back(describe_variant(v));
  std::ostringstream head;
  print_header(head, "eval knn",
               {{"embeddings", o.emb}, {"query", o.query}, {"k", std::to_string(o.neighbors)},
                {"include_self", o.exclude_self ? "false" : "true"},
                {"variants", join(names)}, {"seed", std::to_string(o.seed)}});
  out << head.str();
  const auto table = load_embeddings(o.emb);

  std::vector<EvalReport> rows;
  for (const auto& v : variants) {
    try {
      const auto t = apply_variant(table, v);
      const auto nn = knn(t, o.query, o.neighbors, !o.exclude_self);
      for (std::size_t i = 0; i < nn.size(); ++i) {
        EvalReport r;
        r.task = "knn:" + o.query;
        r.variant = v.name();
        r.dim = t.dim();
        r.metric_name = "cosine";
        r.value = nn[i].similarity;
        r.metadata = v.metadata();
        r.metadata["rank"] = std::to_string(i + 1);
        r.metadata["neighbor"] = nn[i].key;
        rows.push_back(std::move(r));
      }
    } catch (const std::exception& e) {
      EvalReport r;
      r.task = "knn:" + o.query;
      r.variant = v.name();
      r.status = "error";
      r.coverage = 0.0;
      r.message = e.what();
      r.metadata = v.metadata();
      rows.push_back(std::move(r));
    }
  }
  sort_reports(rows);
  emit(out, o, rows);
  write_report_file(o, head.str(), rows);
  return any_ok(rows) ? 0 : 1;
}

int cmd_simmat(const Options& o, std::ostream& out) {
  if (o.output.empty()) throw Error(ErrorCode::InvalidArgument, "simmat needs --out");
  const auto variants = resolve_variants(o, true);
  if (variants.size() > 2) {
    throw Error(ErrorCode::InvalidArgument, "simmat takes at most one --select or --baseline");
  }
  const Variant& v = variants.back();
  print_header(out, "eval simmat", {{"embeddings", o.emb},
                                    {"embeddings2", o.emb2.empty() ? o.emb : o.emb2},
                                    {"config", describe_variant(v)}, {"output", o.output}});
  const auto a = apply_variant(load_embeddings(o.emb), v);
  const auto b = o.emb2.empty() ? a : apply_variant(load_embeddings(o.emb2), v);
  const auto m = similarity_matrix(a, b);
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot write " + o.output);
  write_similarity_tsv(f, a, b, m);
  out << "rows " << a.size() << "\ncols " << b.size() << "\ndim " << a.dim() << "\n";
  return 0;
}

// Best cell per selector: max metric, then smaller dim, then wavelet name.
std::vector<EvalReport> best_per_selector(const std::vector<EvalReport>& rows,
                                          const std::vector<Variant>& cells) {
  std::map<std::string, std::pair<const EvalReport*, std::string>> best;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (!r.ok() || cells[i].kind != Variant::Kind::Wavelet) continue;
    const std::string wavelet = cells[i].wavelet.wavelet.name();
    auto it = best.find(r.variant);
    if (it == best.end()) {
      best.emplace(r.variant, std::make_pair(&r, wavelet));
      continue;
    }
    const EvalReport& b = *it->second.first;
    const bool better = r.value > b.value ||
                        (r.value == b.value &&
                         (r.dim < b.dim || (r.dim == b.dim && wavelet < it->second.second)));
    if (better) it->second = {&r, wavelet};
  }
  std::vector<EvalReport> out;
  for (const auto& [sel, entry] : best) {
    EvalReport r = *entry.first;
    r.metadata["summary"] = "best-of-selector";
    out.push_back(std::move(r));
  }
  sort_reports(out);
  return out;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const std::size_t jobs = resolve_jobs(o.jobs);
  if (o.wavelets.empty() || o.selectors.empty()) {
    throw Error(ErrorCode::InvalidArgument, "sweep needs --wavelet and --select lists");
  }
  SweepSpec spec{resolve_wavelets(o), resolve_selectors(o), resolve_modes(o)};

  std::vector<Variant> cells;
  if (o.with_base) cells.push_back(Variant::base());
  for (const auto& c : spec.cells()) cells.push_back(Variant::dwt(c));

  auto [table, setup] = setup_task(o.task, o);
  std::vector<std::string> ws, ss, ms;
  for (const auto& w : spec.wavelets) ws.push_back(w.name());
  for (const auto s : spec.selectors) ss.push_back(selector_name(s));
  for (const auto m : spec.modes) ms.push_back(std::string(mode_name(m)));
  auto header = setup.header;
  header.push_back({"wavelets", join(ws)});
  header.push_back({"selectors", join(ss)});
  header.push_back({"modes", join(ms)});
  header.push_back({"cells", std::to_string(spec.size())});
  header.push_back({"with_base", o.with_base ? "true" : "false"});
  header.push_back({"seed", std::to_string(o.seed)});
  header.push_back({"jobs", std::to_string(jobs)});
  std::ostringstream head;
  print_header(head, "sweep " + o.task, header);
  out << head.str() << std::flush;

  std::vector<EvalReport> rows(cells.size());
  run_cells(cells.size(), jobs, [&](std::size_t i) { rows[i] = run_cell(table, setup, cells[i]); });
  const auto summary = best_per_selector(rows, cells);

  const bool any_cell_ok = std::any_of(rows.begin() + (o.with_base ? 1 : 0), rows.end(),
                                       [](const EvalReport& r) { return r.ok(); });
  sort_reports(rows);
  emit(out, o, rows);
  if (!o.json) out << "\n";
  emit(out, o, summary, "best per selector");
  write_report_file(o, head.str(), rows, summary);
  return any_cell_ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wavelet compression and evaluation of embedding tables", "wavepress"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  auto* info = app.add_subcommand("info", "List wavelets and selectors; inspect a file");
  info->add_option("--emb", o.emb, "embedding file (word vectors or EMB1)");
  info->add_option("--dim", o.dim, "show compressed dimensions for this input size");
  info->add_option("--wavelet", o.wavelets, "wavelets for the dimension listing")->delimiter(',');
  info->add_option("--mode", o.modes, "modes for the dimension listing")->delimiter(',');

  auto* compress = app.add_subcommand("compress", "Compress an embedding table to EMB1");
  compress->add_option("input", o.input, "word-vector or EMB1 file")->required();
  compress->add_option("output", o.output, "EMB1 output path")->required();
  add_variant_flags(compress, o);
  add_pca_dct_defaults(compress, o);
  compress->add_option("--seed", o.seed, "random seed")->capture_default_str();
  compress->add_option("--jobs", o.jobs, "parallel workers (WAVEPRESS_JOBS overrides)");

  auto* eval = app.add_subcommand("eval", "Evaluate embedding variants on one task");
  eval->require_subcommand(1);
  std::map<CLI::App*, std::string> eval_tasks;
  const std::pair<const char*, const char*> tasks[] = {
      {"wordsim", "Spearman x 100 of pair cosines against gold scores"},
      {"cat", "k-means purity against gold categories"},
      {"sts", "Spearman x 100 on sentence pairs (EMB1 keys)"},
      {"classify", "MLP probe accuracy on fixed splits"}};
  for (const auto& [task, about] : tasks) {
    auto* sub = eval->add_subcommand(task, about);
    sub->add_option("--emb", o.emb, "embedding file")->required();
    sub->add_option("--data", o.data, "dataset file")->required();
    add_variant_flags(sub, o);
    add_pca_dct_defaults(sub, o);
    add_output_flags(sub, o);
    sub->add_flag("--no-base", o.no_base, "skip the uncompressed row");
    if (std::string(task) == "wordsim" || std::string(task) == "cat") {
      sub->add_flag("--full-vocab", o.full_vocab,
                    "keep every row of a word-vector file, not only dataset words");
    }
    if (std::string(task) == "classify") add_mlp_flags(sub, o);
    eval_tasks[sub] = task;
  }
  auto* knn_cmd = eval->add_subcommand("knn", "Nearest neighbours of one key");
  knn_cmd->add_option("--emb", o.emb, "embedding file")->required();
  knn_cmd->add_option("--query", o.query, "query key")->required();
  knn_cmd->add_option("--k", o.neighbors, "number of neighbours")->capture_default_str();
  knn_cmd->add_flag("--exclude-self", o.exclude_self, "never return the query itself");
  knn_cmd->add_flag("--no-base", o.no_base, "skip the uncompressed table");
  add_variant_flags(knn_cmd, o);
  knn_cmd->add_option("--keep", o.dct_keep, "DCT keep fraction for a bare --baseline dct");
  add_output_flags(knn_cmd, o);

  auto* simmat = eval->add_subcommand("simmat", "Write the cosine similarity matrix as TSV");
  simmat->add_option("--emb", o.emb, "row embeddings")->required();
  simmat->add_option("--emb2", o.emb2, "column embeddings (default: same as --emb)");
  simmat->add_option("--out", o.output, "output TSV")->required();
  add_variant_flags(simmat, o);
  add_pca_dct_defaults(simmat, o);

  auto* sweep = app.add_subcommand("sweep", "Run every wavelet x selector x mode cell");
  sweep->add_option("task", o.task, "wordsim, cat, sts or classify")
      ->required()
      ->check(CLI::IsMember({"wordsim", "cat", "sts", "classify"}));
  sweep->add_option("--emb", o.emb, "embedding file")->required();
  sweep->add_option("--data", o.data, "dataset file")->required();
  sweep->add_option("--wavelet", o.wavelets, "wavelets (comma-separated)")
      ->delimiter(',')
      ->required();
  sweep->add_option("--select", o.selectors, "selectors (comma-separated)")
      ->delimiter(',')
      ->required();
  sweep->add_option("--mode", o.modes, "modes (comma-separated, default per)")->delimiter(',');
  sweep->add_flag("--with-base", o.with_base, "add the uncompressed row");
  sweep->add_flag("--full-vocab", o.full_vocab, "keep every row of a word-vector file");
  add_output_flags(sweep, o);
  add_mlp_flags(sweep, o);

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (info->parsed()) return cmd_info(o, out);
    if (compress->parsed()) return cmd_compress(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
    if (knn_cmd->parsed()) return cmd_knn(o, out);
    if (simmat->parsed()) return cmd_simmat(o, out);
    for (const auto& [sub, task] : eval_tasks) {
      if (sub->parsed()) return cmd_eval(task, o, out);
    }
  } catch (const std::exception& e) {
    out << std::flush;
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << app.help();
  return 2;
}

}  // namespace wavepress::cli
