#include "wavepress/wavelet.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "filter_tables.hpp"
#include "wavepress/error.hpp"

namespace wavepress {

namespace {

bool order_supported(Family family, int order) {
  switch (family) {
    case Family::Haar:
      return order == 1;
    case Family::Daubechies:
      return order >= 1 && order <= 10;
    case Family::Symlet:
      return order >= 2 && order <= 10;
    case Family::Coiflet:
      return order >= 1 && order <= 5;
  }
  return false;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

WaveletFamily::WaveletFamily(Family family, int order) : family_(family), order_(order) {
  if (!order_supported(family, order)) {
    throw Error(ErrorCode::UnsupportedWavelet,
                "order " + std::to_string(order) + " is outside the supported range");
  }
}

WaveletFamily WaveletFamily::parse(std::string_view name) {
  const std::string s = lower(name);
  if (s == "haar") return haar();

  struct Prefix {
    std::string_view text;
    Family family;
  };
  constexpr Prefix prefixes[] = {
      {"db", Family::Daubechies}, {"sym", Family::Symlet}, {"coif", Family::Coiflet}};
  for (const auto& p : prefixes) {
    if (!s.starts_with(p.text)) continue;
    const char* first = s.data() + p.text.size();
    const char* last = s.data() + s.size();
    int order = 0;
    auto [ptr, ec] = std::from_chars(first, last, order);
    if (ec != std::errc{} || ptr != last || first == last) break;
    return WaveletFamily(p.family, order);
  }
  throw Error(ErrorCode::UnsupportedWavelet, "unknown wavelet name '" + std::string(name) + "'");
}

std::size_t WaveletFamily::filter_length() const noexcept {
  switch (family_) {
    case Family::Haar:
      return 2;
    case Family::Daubechies:
    case Family::Symlet:
      return 2 * static_cast<std::size_t>(order_);
    case Family::Coiflet:
      return 6 * static_cast<std::size_t>(order_);
  }
  return 0;
}

std::string WaveletFamily::name() const {
  switch (family_) {
    case Family::Haar:
      return "haar";
    case Family::Daubechies:
      return "db" + std::to_string(order_);
    case Family::Symlet:
      return "sym" + std::to_string(order_);
    case Family::Coiflet:
      return "coif" + std::to_string(order_);
  }
  return {};
}

std::vector<WaveletFamily> all_wavelets() {
  std::vector<WaveletFamily> out{WaveletFamily::haar()};
  for (int n = 1; n <= 10; ++n) out.emplace_back(Family::Daubechies, n);
  for (int n = 2; n <= 10; ++n) out.emplace_back(Family::Symlet, n);
  for (int n = 1; n <= 5; ++n) out.emplace_back(Family::Coiflet, n);
  return out;
}

FilterPair get_filters(const WaveletFamily& w) {
  const auto h = detail::scaling_filter(w.family(), w.order());
  if (h.empty()) throw Error(ErrorCode::UnsupportedWavelet, w.name());

  const std::size_t len = h.size();
  FilterPair f;
  f.dec_lo.assign(h.begin(), h.end());
  f.dec_hi.resize(len);
  for (std::size_t k = 0; k < len; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    f.dec_hi[k] = sign * f.dec_lo[len - 1 - k];
  }
  f.rec_lo.assign(f.dec_lo.rbegin(), f.dec_lo.rend());
  f.rec_hi.assign(f.dec_hi.rbegin(), f.dec_hi.rend());
  return f;
}

PaddingMode parse_mode(std::string_view name) {
  const std::string s = lower(name);
  if (s == "per" || s == "periodization") return PaddingMode::Periodization;
  if (s == "sym" || s == "symmetric") return PaddingMode::Symmetric;
  if (s == "zero" || s == "zpd") return PaddingMode::Zero;
  throw Error(ErrorCode::InvalidArgument, "unknown padding mode '" + std::string(name) + "'");
}

std::string_view mode_name(PaddingMode mode) noexcept {
  switch (mode) {
    case PaddingMode::Periodization:
      return "per";
    case PaddingMode::Symmetric:
      return "sym";
    case PaddingMode::Zero:
      return "zero";
  }
  return "?";
}

}  // namespace wavepress
