#include "wavepress/embedding_io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string_view>
#include <unordered_set>

#include "text_util.hpp"
#include "wavepress/error.hpp"

namespace wavepress {

namespace {

constexpr char kMagic[4] = {'E', 'M', 'B', '1'};

bool parse_size(std::string_view s, std::size_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

void put_u32(std::string& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

WordVectorFile load_word_vectors(const std::filesystem::path& path,
                                 const WordVectorOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());

  WordVectorFile result;
  std::optional<std::size_t> dim = options.expected_dim;
  std::vector<std::string> keys;
  std::vector<double> values;
  std::unordered_set<std::string> seen;
  std::vector<std::string_view> fields;
  std::vector<double> row;

  std::string line;
  bool first_line = true;
  bool any_content = false;
  while (std::getline(in, line)) {
    detail::strip_cr(line);
    if (line.empty()) continue;
    any_content = true;
    detail::split_whitespace(line, fields);

    if (first_line) {
      first_line = false;
      std::size_t n = 0;
      std::size_t d = 0;
      if (fields.size() == 2 && parse_size(fields[0], n) && parse_size(fields[1], d)) {
        result.had_header = true;
        if (dim && *dim != d) {
          throw Error(ErrorCode::DimensionMismatch, "header declares d=" + std::to_string(d) +
                                                        ", expected " + std::to_string(*dim));
        }
        dim = d;
        continue;
      }
    }

    if (!dim) {
      if (fields.size() < 2) {
        ++result.skipped;
        continue;
      }
      dim = fields.size() - 1;
    }
    if (fields.size() != *dim + 1) {
      ++result.skipped;
      continue;
    }

    row.resize(*dim);
    bool ok = true;
    for (std::size_t j = 0; j < *dim; ++j) {
      if (!detail::parse_double(fields[j + 1], row[j]) || !std::isfinite(row[j])) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      ++result.skipped;
      continue;
    }

    std::string token(fields[0]);
    if (options.vocabulary && !options.vocabulary->contains(token)) continue;
    if (!seen.insert(token).second) {
      ++result.duplicates;
      continue;
    }
    keys.push_back(std::move(token));
    values.insert(values.end(), row.begin(), row.end());
  }

  if (!any_content) throw Error(ErrorCode::EmptyFile, path.string() + " has no content");
  if (keys.empty()) {
    throw Error(ErrorCode::EmptyFile, path.string() + " has no usable vectors");
  }

  const auto n = static_cast<Eigen::Index>(keys.size());
  const auto d = static_cast<Eigen::Index>(*dim);
  RowMatrix m = Eigen::Map<const RowMatrix>(values.data(), n, d);
  result.table = EmbeddingTable(std::move(keys), std::move(m));
  return result;
}

void save_matrix(const EmbeddingTable& table, const std::filesystem::path& path) {
  if (table.size() > UINT32_MAX || table.dim() > UINT32_MAX) {
    throw Error(ErrorCode::InvalidArgument, "table too large for EMB1");
  }
  std::string buf;
  buf.reserve(12 + table.size() * table.dim() * 4);
  buf.append(kMagic, 4);
  put_u32(buf, static_cast<std::uint32_t>(table.size()));
  put_u32(buf, static_cast<std::uint32_t>(table.dim()));
  const auto& m = table.matrix();
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    put_u32(buf, std::bit_cast<std::uint32_t>(static_cast<float>(m.data()[i])));
  }
  for (const auto& key : table.keys()) {
    if (key.find('\n') != std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, "EMB1 keys cannot contain newlines");
    }
    buf.append(key);
    buf.push_back('\n');
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

EmbeddingTable load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());

  if (bytes.size() < 4) throw Error(ErrorCode::TruncatedFile, "missing magic");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::BadMagic, path.string() + " is not an EMB1 file");
  }
  if (bytes.size() < 12) throw Error(ErrorCode::TruncatedFile, "missing header");
  const std::uint32_t n = get_u32(p + 4);
  const std::uint32_t d = get_u32(p + 8);
  if (n == 0) throw Error(ErrorCode::KeyCountMismatch, "EMB1 file declares zero rows");
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "EMB1 file declares zero dimension");

  const std::uint64_t payload = std::uint64_t{n} * d * 4;
  if (bytes.size() - 12 < payload) {
    throw Error(ErrorCode::TruncatedFile, "expected " + std::to_string(payload) +
                                              " bytes of values");
  }
  RowMatrix m(n, d);
  const unsigned char* v = p + 12;
  for (std::uint64_t i = 0; i < std::uint64_t{n} * d; ++i) {
    m.data()[i] = static_cast<double>(std::bit_cast<float>(get_u32(v + 4 * i)));
  }

  std::vector<std::string> keys;
  keys.reserve(n);
  std::string_view rest(bytes.data() + 12 + payload, bytes.size() - 12 - payload);
  while (!rest.empty()) {
    const auto nl = rest.find('\n');
    if (nl == std::string_view::npos) {
      throw Error(ErrorCode::KeyCountMismatch, "unterminated trailing key");
    }
    keys.emplace_back(rest.substr(0, nl));
    rest.remove_prefix(nl + 1);
  }
  if (keys.size() != n) {
    throw Error(ErrorCode::KeyCountMismatch, "header declares " + std::to_string(n) +
                                                 " rows, found " + std::to_string(keys.size()) +
                                                 " keys");
  }
  return EmbeddingTable(std::move(keys), std::move(m));
}

bool has_emb1_magic(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  char head[4] = {};
  if (!in.read(head, 4)) return false;
  return std::memcmp(head, kMagic, 4) == 0;
}

EmbeddingTable load_embeddings(const std::filesystem::path& path,
                               const WordVectorOptions& options) {
  if (has_emb1_magic(path)) {
    auto table = load_matrix(path);
    if (options.expected_dim && *options.expected_dim != table.dim()) {
      throw Error(ErrorCode::DimensionMismatch, "EMB1 dimension " + std::to_string(table.dim()));
    }
    return table;
  }
  return load_word_vectors(path, options).table;
}

}  // namespace wavepress
