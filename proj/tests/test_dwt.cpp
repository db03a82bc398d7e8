#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "wavepress/dwt.hpp"
#include "wavepress/error.hpp"

using namespace wavepress;

namespace {

const std::vector<PaddingMode> kModes{PaddingMode::Periodization, PaddingMode::Symmetric,
                                      PaddingMode::Zero};

double max_rel_error(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(a[i]));
  }
  return num / den;
}

void expect_code(ErrorCode code, auto&& fn) {
  try {
    fn();
    FAIL() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(Dwt, HaarOnFourSamples) {
  const std::vector<double> x{4, 6, 10, 12};
  const auto s = dwt_level(x, get_filters(WaveletFamily::haar()), PaddingMode::Periodization);
  const double r2 = std::sqrt(2.0);
  ASSERT_EQ(s.approx.size(), 2u);
  EXPECT_NEAR(s.approx[0], 10 / r2, 1e-14);
  EXPECT_NEAR(s.approx[1], 22 / r2, 1e-14);
  EXPECT_NEAR(s.detail[0], -r2, 1e-14);
  EXPECT_NEAR(s.detail[1], -r2, 1e-14);
}

TEST(Dwt, PeriodizationMatchesDirectCorrelation) {
  std::mt19937_64 g(7);
  for (const auto& w : all_wavelets()) {
    const auto f = get_filters(w);
    for (std::size_t d : {2u, 3u, 5u, 8u, 13u, 64u, 101u}) {
      SCOPED_TRACE(w.name() + " d=" + std::to_string(d));
      const auto x = oracle::random_vector(g, d);
      const auto s = dwt_level(x, f, PaddingMode::Periodization);
      const auto a = oracle::periodized_correlation(x, f.dec_lo);
      const auto dd = oracle::periodized_correlation(x, f.dec_hi);
      ASSERT_EQ(s.approx.size(), a.size());
      for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_NEAR(s.approx[k], a[k], 1e-12);
        EXPECT_NEAR(s.detail[k], dd[k], 1e-12);
      }
    }
  }
}

// Reference outputs produced with PyWavelets 1.8 (pywt.dwt) for the same
// input; its symmetric and zero modes use the same window alignment.
TEST(Dwt, ExtendedModesMatchReferenceValues) {
  const std::vector<double> x{0.5, -1.25, 3.0, 2.0, -0.75, 4.5, 1.0};
  struct Case {
    const char* wavelet;
    PaddingMode mode;
    std::vector<double> a, d;
  };
  const std::vector<Case> cases{
      {"db2", PaddingMode::Symmetric,
       {0.088388347648318, -0.390551364076474, 2.371470594397037, 3.496835527452488, 2.425183764984848},
       {1.07165176246764, 1.759098158701242, -3.637236640691568, -0.558036873682341, 3.772992161085262}},
      {"db2", PaddingMode::Zero,
       {0.273833837210082, -0.390551364076474, 2.371470594397037, 3.626245050003748, 0.482962913144534},
       {1.021961793299572, 1.759098158701242, -3.637236640691568, -0.075073960537807, -0.12940952255126}},
      {"coif1", PaddingMode::Symmetric,
       {-0.021851503071202, -0.044439757665036, 2.852806054559732, 1.461671914462226, 2.496970821064996,
        3.620658075316085},
       {-0.642447609582794, 2.47324164502043, -0.575419597323924, -3.61609438951316, 1.337321426985744,
        3.322390900879838}},
      {"coif1", PaddingMode::Zero,
       {-0.016796649586523, -0.304304363284435, 2.852806054559732, 1.477327642598018, 2.427660965904664,
        -0.072732619512526},
       {0.078033056838083, 2.417305675094428, -0.575419597323924, -3.688827009025686, 0.723903430773071,
        -0.015655728135792}},
  };
  for (const auto& c : cases) {
    SCOPED_TRACE(std::string(c.wavelet) + " " + std::string(mode_name(c.mode)));
    const auto s = dwt_level(x, get_filters(WaveletFamily::parse(c.wavelet)), c.mode);
    ASSERT_EQ(s.approx.size(), c.a.size());
    ASSERT_EQ(s.detail.size(), c.d.size());
    for (std::size_t k = 0; k < c.a.size(); ++k) {
      EXPECT_NEAR(s.approx[k], c.a[k], 1e-12);
      EXPECT_NEAR(s.detail[k], c.d[k], 1e-12);
    }
  }
}

TEST(Dwt, SubbandLengths) {
  EXPECT_EQ(subband_length(300, 2, PaddingMode::Periodization), 150u);
  EXPECT_EQ(subband_length(301, 18, PaddingMode::Periodization), 151u);
  EXPECT_EQ(subband_length(7, 4, PaddingMode::Symmetric), 5u);
  EXPECT_EQ(subband_length(7, 6, PaddingMode::Zero), 6u);
  EXPECT_EQ(subband_length(300, 18, PaddingMode::Symmetric), 158u);
}

TEST(Dwt, PerfectReconstructionEverywhere) {
  std::mt19937_64 g(11);
  for (const auto& w : all_wavelets()) {
    const auto f = get_filters(w);
    for (const auto mode : kModes) {
      for (std::size_t d = 2; d <= 1024; d += (d < 130 ? 1 : 37)) {
        const auto x = oracle::random_vector(g, d);
        const auto s = dwt_level(x, f, mode);
        ASSERT_EQ(s.approx.size(), subband_length(d, f.length(), mode));
        const auto y = idwt_level(s.approx, s.detail, f, mode, d);
        ASSERT_EQ(y.size(), d);
        ASSERT_LT(max_rel_error(x, y), 1e-10)
            << w.name() << " " << mode_name(mode) << " d=" << d;
      }
    }
  }
}

TEST(Dwt, ParsevalUnderPeriodization) {
  std::mt19937_64 g(3);
  for (const auto& w : all_wavelets()) {
    const auto f = get_filters(w);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t d = 2 * (1 + g() % 200);
      const auto x = oracle::random_vector(g, d);
      const auto s = dwt_level(x, f, PaddingMode::Periodization);
      const double e = oracle::norm2(s.approx) + oracle::norm2(s.detail);
      EXPECT_NEAR(e / oracle::norm2(x), 1.0, 1e-12) << w.name() << " d=" << d;
    }
  }
}

TEST(Dwt, Linearity) {
  std::mt19937_64 g(5);
  for (const auto mode : kModes) {
    const auto f = get_filters(WaveletFamily::parse("sym4"));
    const auto x = oracle::random_vector(g, 37);
    const auto y = oracle::random_vector(g, 37);
    std::vector<double> z(37);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = 2.5 * x[i] - 0.75 * y[i];
    const auto sx = dwt_level(x, f, mode), sy = dwt_level(y, f, mode), sz = dwt_level(z, f, mode);
    for (std::size_t k = 0; k < sz.approx.size(); ++k) {
      EXPECT_NEAR(sz.approx[k], 2.5 * sx.approx[k] - 0.75 * sy.approx[k], 1e-12);
      EXPECT_NEAR(sz.detail[k], 2.5 * sx.detail[k] - 0.75 * sy.detail[k], 1e-12);
    }
  }
}

TEST(Dwt, ConstantSignalHasNoDetail) {
  const std::vector<double> x(40, 3.0);
  for (const auto& w : all_wavelets()) {
    const auto s = dwt_level(x, get_filters(w), PaddingMode::Periodization);
    for (double v : s.detail) EXPECT_NEAR(v, 0.0, 1e-10) << w.name();
    for (double v : s.approx) EXPECT_NEAR(v, 3.0 * std::sqrt(2.0), 1e-10) << w.name();
  }
}

TEST(Dwt, Errors) {
  const auto f = get_filters(WaveletFamily::haar());
  const std::vector<double> one{1.0};
  expect_code(ErrorCode::DimensionTooSmall, [&] { dwt_level(one, f, PaddingMode::Periodization); });
  const std::vector<double> a{1, 2}, d{1};
  expect_code(ErrorCode::LengthMismatch, [&] { idwt_level(a, d, f, PaddingMode::Periodization, 4); });
  expect_code(ErrorCode::LengthMismatch, [&] { idwt_level(a, a, f, PaddingMode::Periodization, 7); });
}

TEST(Wavedec, TreeShapes) {
  std::mt19937_64 g(1);
  const auto x300 = oracle::random_vector(g, 300);
  const auto t = wavedec(x300, WaveletFamily::haar(), PaddingMode::Periodization, 2);
  EXPECT_EQ(t.depth(), 2u);
  EXPECT_EQ(t.branch("A").size(), 150u);
  EXPECT_EQ(t.branch("D").size(), 150u);
  EXPECT_EQ(t.branch("DA").size(), 75u);
  EXPECT_EQ(t.labels(2), (std::vector<std::string>{"AA", "AD", "DA", "DD"}));
  expect_code(ErrorCode::InsufficientDepth, [&] { t.branch("AAA"); });
  expect_code(ErrorCode::InsufficientDepth, [&] { t.branch_length(3); });

  const auto x1024 = oracle::random_vector(g, 1024);
  const auto t4 = wavedec(x1024, WaveletFamily::parse("db3"), PaddingMode::Periodization, 4);
  EXPECT_EQ(t4.branch("AAAA").size(), 64u);

  const std::vector<double> two{1.0, 2.0};
  expect_code(ErrorCode::TooManyLevels,
              [&] { wavedec(two, WaveletFamily::haar(), PaddingMode::Periodization, 2); });
}

TEST(Wavedec, BranchesAreRepeatedSingleLevels) {
  std::mt19937_64 g(2);
  const auto x = oracle::random_vector(g, 96);
  for (const auto mode : kModes) {
    const auto w = WaveletFamily::parse("coif2");
    const auto f = get_filters(w);
    const auto t = wavedec(x, w, mode, 3);
    const auto l1 = dwt_level(x, f, mode);
    const auto d1 = dwt_level(l1.detail, f, mode);
    const auto da = dwt_level(d1.approx, f, mode);
    const auto got = t.branch("DAD");
    ASSERT_EQ(got.size(), da.detail.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_DOUBLE_EQ(got[i], da.detail[i]);
  }
}

TEST(Wavedec, DecomposerReusesStorage) {
  std::mt19937_64 g(4);
  Decomposer dec(WaveletFamily::parse("sym2"), PaddingMode::Symmetric, 3);
  for (std::size_t d : {64u, 17u, 64u}) {
    const auto x = oracle::random_vector(g, d);
    const auto& t = dec(x);
    const auto ref = wavedec(x, WaveletFamily::parse("sym2"), PaddingMode::Symmetric, 3);
    for (const auto& label : ref.labels(3)) {
      const auto a = t.branch(label), b = ref.branch(label);
      ASSERT_EQ(a.size(), b.size());
      for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
    }
  }
}
