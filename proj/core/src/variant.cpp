#include "wavepress/variant.hpp"

#include <sstream>

#include "text_util.hpp"
#include "wavepress/baselines.hpp"
#include "wavepress/error.hpp"

namespace wavepress {

std::string Variant::name() const {
  switch (kind) {
    case Kind::Base: return "base";
    case Kind::Wavelet: return selector_name(wavelet.selector);
    case Kind::Pca: return "pca";
    case Kind::Dct: return "dct";
  }
  return "?";
}

std::map<std::string, std::string> Variant::metadata() const {
  std::map<std::string, std::string> m;
  switch (kind) {
    case Kind::Base:
      break;
    case Kind::Wavelet:
      m["wavelet"] = wavelet.wavelet.name();
      m["mode"] = std::string(mode_name(wavelet.mode));
      break;
    case Kind::Pca:
      m["pca_k"] = std::to_string(pca_k);
      m["pca_fit"] = "evaluated-table";
      break;
    case Kind::Dct: {
      std::ostringstream s;
      s << dct_keep;
      m["dct_keep"] = s.str();
      m["dct_norm"] = "ortho";
      break;
    }
  }
  return m;
}

Variant parse_baseline(std::string_view spec, std::optional<std::size_t> default_k,
                       std::optional<double> default_keep) {
  const auto colon = spec.find(':');
  const std::string name = detail::lower(spec.substr(0, colon));
  const std::string_view arg =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

  if (name == "pca") {
    std::size_t k = 0;
    if (!arg.empty()) {
      double v = 0.0;
      if (!detail::parse_double(arg, v) || v < 1 || v != static_cast<double>(static_cast<std::size_t>(v))) {
        throw Error(ErrorCode::InvalidArgument, "bad PCA component count '" + std::string(arg) + "'");
      }
      k = static_cast<std::size_t>(v);
    } else if (default_k) {
      k = *default_k;
    } else {
      throw Error(ErrorCode::InvalidArgument, "pca needs a component count (pca:K or --k)");
    }
    return Variant::pca(k);
  }
  if (name == "dct") {
    double keep = 0.0;
    if (!arg.empty()) {
      if (!detail::parse_double(arg, keep)) {
        throw Error(ErrorCode::InvalidArgument, "bad DCT keep fraction '" + std::string(arg) + "'");
      }
    } else if (default_keep) {
      keep = *default_keep;
    } else {
      throw Error(ErrorCode::InvalidArgument, "dct needs a keep fraction (dct:F or --keep)");
    }
    if (!(keep > 0.0 && keep <= 1.0)) {
      throw Error(ErrorCode::InvalidTruncation, "DCT keep fraction must be in (0, 1]");
    }
    return Variant::dct(keep);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown baseline '" + std::string(spec) + "'");
}

EmbeddingTable apply_variant(const EmbeddingTable& table, const Variant& v, std::size_t jobs) {
  switch (v.kind) {
    case Variant::Kind::Base:
      return table;
    case Variant::Kind::Wavelet:
      return compress_table(table, v.wavelet, jobs);
    case Variant::Kind::Pca: {
      const auto model = pca_fit(table.matrix(), v.pca_k);
      return EmbeddingTable(table.keys(), pca_transform(model, table.matrix()));
    }
    case Variant::Kind::Dct: {
      if (table.empty()) throw Error(ErrorCode::EmptyTable, "cannot compress an empty table");
      const std::size_t n = dct_keep_count(table.dim(), v.dct_keep);
      RowMatrix out(static_cast<Eigen::Index>(table.size()), static_cast<Eigen::Index>(n));
      DctPlan plan(table.dim());
      std::vector<double> buf(table.dim());
      for (std::size_t i = 0; i < table.size(); ++i) {
        plan.forward(table.row(i), buf);
        for (std::size_t j = 0; j < n; ++j) {
          out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = buf[j];
        }
      }
      return EmbeddingTable(table.keys(), std::move(out));
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown variant");
}

}  // namespace wavepress
