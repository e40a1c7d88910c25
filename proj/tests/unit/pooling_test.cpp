#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <random>

#include "lyricnet/errors.hpp"
#include "lyricnet/pooling/pooling.hpp"
#include "oracles.hpp"

using namespace lyricnet;
using namespace lyricnet::pooling;

TEST(Pooling, HandComputedStrategies) {
  const TokenEmbeddingMatrix m{Matrix::from_rows({{1, -2, 0}, {3, 4, -1}, {-5, 0, 2}}), 1};
  EXPECT_EQ(mean_pool(m), (std::vector<float>{-1.0f / 3.0f, 2.0f / 3.0f, 1.0f / 3.0f}));
  EXPECT_EQ(max_pool(m), (std::vector<float>{3, 4, 2}));
  EXPECT_EQ(concat_max_cls(m), (std::vector<float>{3, 4, 2, 3, 4, -1}));
  EXPECT_EQ(pool(m, PoolingStrategy::kMax), max_pool(m));
  EXPECT_EQ(pooled_dim(768, PoolingStrategy::kConcatMaxCls), 1536u);
  EXPECT_EQ(pooled_dim(768, PoolingStrategy::kMean), 768u);
}

TEST(Pooling, MatchesEigenReductions) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    TokenEmbeddingMatrix m{oracle::random_matrix(1 + trial, 16, rng, -3.0, 3.0), 0};
    const auto e = oracle::to_eigen(m.data);
    const Eigen::RowVectorXd mean = e.colwise().mean();
    const Eigen::RowVectorXd mx = e.colwise().maxCoeff();
    const auto pm = mean_pool(m), px = max_pool(m);
    for (int j = 0; j < 16; ++j) {
      EXPECT_NEAR(pm[j], mean(j), 1e-6);
      EXPECT_EQ(px[j], static_cast<float>(mx(j)));
    }
  }
}

TEST(Pooling, InvariantToTokenOrderExceptCls) {
  std::mt19937_64 rng(9);
  TokenEmbeddingMatrix m{oracle::random_matrix(12, 5, rng), 4};
  const auto mean = mean_pool(m), mx = max_pool(m);
  const std::vector<float> cls(m.data.row(4).begin(), m.data.row(4).end());
  std::vector<std::size_t> order(12);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (int s = 0; s < 50; ++s) {
    std::shuffle(order.begin(), order.end(), rng);
    TokenEmbeddingMatrix p{select_rows(m.data, order), std::nullopt};
    p.cls_index = static_cast<std::size_t>(std::find(order.begin(), order.end(), 4u) - order.begin());
    const auto pm = mean_pool(p);
    for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(pm[j], mean[j], 1e-6);
    EXPECT_EQ(max_pool(p), mx);
    auto expected = mx;
    expected.insert(expected.end(), cls.begin(), cls.end());
    EXPECT_EQ(concat_max_cls(p), expected);
  }
}

TEST(Pooling, DegenerateInputs) {
  EXPECT_THROW(mean_pool(TokenEmbeddingMatrix{Matrix(0, 4), std::nullopt}), DataError);
  const TokenEmbeddingMatrix no_cls{Matrix(2, 2, 1.0f), std::nullopt};
  EXPECT_THROW(concat_max_cls(no_cls), DataError);
  EXPECT_THROW(concat_max_cls(TokenEmbeddingMatrix{Matrix(2, 2, 1.0f), 2}), DataError);
  EXPECT_THROW(parse_pooling("sum"), UsageError);
  for (auto s : {PoolingStrategy::kMean, PoolingStrategy::kMax, PoolingStrategy::kConcatMaxCls})
    EXPECT_EQ(parse_pooling(to_string(s)), s);
}

TEST(Ltok, RoundTripAndLayout) {
  const TokenEmbeddingMatrix m{Matrix::from_rows({{1, 2}, {3, 4}, {5, 6}}), 0};
  const auto bytes = encode_ltok(m);
  ASSERT_EQ(bytes.size(), 16u + 6 * 4);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "LTOK");
  EXPECT_EQ(bytes[4], 3);
  EXPECT_EQ(bytes[8], 2);
  EXPECT_EQ(bytes[12], 0);
  EXPECT_EQ(parse_ltok(bytes), m);

  const TokenEmbeddingMatrix none{Matrix::from_rows({{1, 2}}), std::nullopt};
  const auto nb = encode_ltok(none);
  EXPECT_EQ(nb[12], 0xFF);
  EXPECT_EQ(nb[15], 0xFF);
  EXPECT_EQ(parse_ltok(nb), none);

  const auto path = std::filesystem::temp_directory_path() / "lyricnet_unit_tok.ltok";
  write_ltok(m, path);
  EXPECT_EQ(read_ltok(path), m);
}

TEST(Ltok, CorruptFilesRejected) {
  auto bytes = encode_ltok(TokenEmbeddingMatrix{Matrix::from_rows({{1, 2}, {3, 4}}), 1});
  auto cut = bytes;
  cut.resize(cut.size() - 1);
  EXPECT_THROW(parse_ltok(cut), IntegrityError);
  auto extra = bytes;
  extra.push_back(0);
  EXPECT_THROW(parse_ltok(extra), IntegrityError);
  auto magic = bytes;
  magic[1] = 'X';
  EXPECT_THROW(parse_ltok(magic), DataError);
  auto cls = bytes;
  cls[12] = 2;
  EXPECT_THROW(parse_ltok(cls), DataError);
}
