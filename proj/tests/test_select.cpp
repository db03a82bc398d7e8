#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"
#include "wavepress/error.hpp"
#include "wavepress/select.hpp"

using namespace wavepress;

namespace {

EmbeddingTable random_table(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  RowMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  std::normal_distribution<double> nd;
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = nd(g);
  std::vector<std::string> keys;
  for (std::size_t i = 0; i < n; ++i) keys.push_back("k" + std::to_string(i));
  return EmbeddingTable(std::move(keys), std::move(m));
}

}  // namespace

TEST(Selector, ParsesSpellings) {
  EXPECT_EQ(parse_selector("cA"), Selector::CA);
  EXPECT_EQ(parse_selector("CD"), Selector::CD);
  EXPECT_EQ(parse_selector("caaaa"), Selector::CAAAA);
  EXPECT_EQ(parse_selector("cA+cDA"), Selector::CA_PLUS_CDA);
  EXPECT_EQ(parse_selector("CA_PLUS_CDA"), Selector::CA_PLUS_CDA);
  EXPECT_EQ(parse_selector("cd+cad"), Selector::CD_PLUS_CAD);
  EXPECT_THROW(parse_selector("cX"), Error);
  for (const auto s : all_selectors()) EXPECT_EQ(parse_selector(selector_name(s)), s);
}

TEST(Selector, DimensionContracts) {
  const auto per = PaddingMode::Periodization;
  EXPECT_EQ(compressed_dim(300, Selector::CA, per, 2), 150u);
  EXPECT_EQ(compressed_dim(300, Selector::CD, per, 18), 150u);
  EXPECT_EQ(compressed_dim(300, Selector::CA_PLUS_CDA, per, 2), 225u);
  EXPECT_EQ(compressed_dim(300, Selector::CD_PLUS_CAD, per, 2), 225u);
  EXPECT_EQ(compressed_dim(1024, Selector::CAAAA, per, 2), 64u);
  EXPECT_EQ(compressed_dim(768, Selector::CA, per, 2), 384u);
  EXPECT_EQ(compressed_dim(100, Selector::CD, per, 2), 50u);
  EXPECT_DOUBLE_EQ(compression_ratio(300, Selector::CA, per), 0.5);
  EXPECT_DOUBLE_EQ(compression_ratio(300, Selector::CA_PLUS_CDA, per), 0.75);
  EXPECT_THROW(compression_ratio(300, Selector::CA, PaddingMode::Symmetric), Error);
  EXPECT_DOUBLE_EQ(compression_ratio(300, Selector::CA, PaddingMode::Symmetric,
                                     WaveletFamily::parse("coif3")),
                   158.0 / 300.0);
  try {
    compressed_dim(8, Selector::CAAAA, per, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientDepth);
  }
}

TEST(Selector, SelectConcatenatesBranches) {
  std::mt19937_64 g(9);
  const auto x = oracle::random_vector(g, 300);
  const auto t = wavedec(x, WaveletFamily::parse("db2"), PaddingMode::Periodization, 2);
  const auto v = select(t, Selector::CA_PLUS_CDA);
  ASSERT_EQ(v.size(), 225u);
  const auto a = t.branch("A");
  const auto da = t.branch("DA");
  for (std::size_t i = 0; i < 150; ++i) EXPECT_EQ(v[i], a[i]);
  for (std::size_t i = 0; i < 75; ++i) EXPECT_EQ(v[150 + i], da[i]);
  const auto t1 = wavedec(x, WaveletFamily::parse("db2"), PaddingMode::Periodization, 1);
  EXPECT_THROW(select(t1, Selector::CAA), Error);
}

TEST(Selector, RowCompressorEqualsSelectOfWavedec) {
  std::mt19937_64 g(10);
  for (const auto& w : {WaveletFamily::haar(), WaveletFamily::parse("db4"),
                        WaveletFamily::parse("sym5"), WaveletFamily::parse("coif3")}) {
    for (const auto mode : {PaddingMode::Periodization, PaddingMode::Symmetric, PaddingMode::Zero}) {
      for (const auto s : all_selectors()) {
        for (std::size_t d : {50u, 99u, 300u}) {
          const CompressionConfig c{w, mode, s};
          RowCompressor rc(c, d);
          ASSERT_EQ(rc.output_dim(), compressed_dim(d, c));
          std::vector<double> out(rc.output_dim());
          for (int rep = 0; rep < 2; ++rep) {
            const auto x = oracle::random_vector(g, d);
            rc.compress(x, out);
            const auto ref = select(wavedec(x, w, mode, required_depth(s)), s);
            ASSERT_EQ(ref.size(), out.size());
            for (std::size_t i = 0; i < out.size(); ++i) {
              ASSERT_EQ(out[i], ref[i]) << c.describe() << " d=" << d;
            }
          }
        }
      }
    }
  }
}

TEST(Selector, RowCompressorErrors) {
  EXPECT_THROW(RowCompressor({WaveletFamily::haar(), PaddingMode::Periodization, Selector::CAAAA}, 8),
               Error);
  RowCompressor rc({}, 10);
  std::vector<double> in(9), out(5);
  try {
    rc.compress(in, out);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(Selector, CompressTableKeepsKeysAndIgnoresJobs) {
  const auto t = random_table(101, 64, 3);
  const CompressionConfig c{WaveletFamily::parse("sym3"), PaddingMode::Periodization,
                            Selector::CD_PLUS_CAD};
  const auto one = compress_table(t, c, 1);
  const auto four = compress_table(t, c, 4);
  EXPECT_EQ(one.keys(), t.keys());
  EXPECT_EQ(one.dim(), 48u);
  EXPECT_EQ(one.matrix(), four.matrix());
  EXPECT_THROW(compress_table(EmbeddingTable(), c), Error);
}
