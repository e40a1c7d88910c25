#include <gtest/gtest.h>

#include <random>

#include "lyricnet/autoenc/autoencoder.hpp"
#include "lyricnet/errors.hpp"
#include "oracles.hpp"

using namespace lyricnet;
using namespace lyricnet::autoenc;

TEST(AudioAe, FloorSchedule) {
  const AutoencoderSpec s = build_audio_ae(209);
  EXPECT_EQ(s.encoder_dims, (std::vector<std::size_t>{104, 69}));
  EXPECT_EQ(s.bottleneck_dim, 41u);
  EXPECT_EQ(s.decoder_dims(), (std::vector<std::size_t>{69, 104, 209}));
  EXPECT_FALSE(s.tied);
  EXPECT_EQ(s.activation, Activation::kReLU);
  EXPECT_EQ(s.output_activation, Activation::kSigmoid);
  EXPECT_EQ(s.loss, ReconstructionLoss::mse());
  const auto layers = s.layer_specs();
  ASSERT_EQ(layers.size(), 6u);
  EXPECT_EQ(layers.front().in_dim, 209u);
  EXPECT_EQ(layers.back().out_dim, 209u);
  EXPECT_EQ(layers.back().activation, Activation::kSigmoid);
  EXPECT_THROW(build_audio_ae(5), UsageError);
  EXPECT_NO_THROW(build_audio_ae(6));
}

TEST(LyricsAe, TiedScheduleAndDivisors) {
  const AutoencoderSpec s = build_lyrics_ae(768, 12);
  EXPECT_EQ(s.encoder_dims, (std::vector<std::size_t>{384, 192, 96}));
  EXPECT_EQ(s.bottleneck_dim, 64u);
  EXPECT_TRUE(s.tied);
  EXPECT_EQ(s.output_activation, Activation::kIdentity);
  EXPECT_EQ(build_lyrics_ae(768, 16).bottleneck_dim, 48u);
  const auto layers = s.layer_specs();
  ASSERT_EQ(layers.size(), 8u);
  for (std::size_t l = 0; l < 4; ++l) {
    EXPECT_FALSE(layers[l].tied_to.has_value());
    ASSERT_TRUE(layers[7 - l].tied_to.has_value());
    EXPECT_EQ(*layers[7 - l].tied_to, l);
  }
  EXPECT_THROW(build_lyrics_ae(768, 10), UsageError);
  EXPECT_THROW(build_lyrics_ae(31), UsageError);
}

TEST(AutoencoderSpec, RejectsNonDecreasingEncoders) {
  AutoencoderSpec s;
  s.input_dim = 10;
  s.encoder_dims = {8, 8};
  s.bottleneck_dim = 2;
  EXPECT_THROW(s.validate(), UsageError);
  s.encoder_dims = {8, 4};
  s.bottleneck_dim = 4;
  EXPECT_THROW(s.validate(), UsageError);
  s.bottleneck_dim = 3;
  EXPECT_NO_THROW(s.validate());
}

TEST(ReconstructionLoss, ParseAndFormat) {
  EXPECT_EQ(ReconstructionLoss::parse("mse"), ReconstructionLoss::mse());
  EXPECT_EQ(ReconstructionLoss::parse("directional"), ReconstructionLoss::directional());
  const auto custom = ReconstructionLoss::parse("directional(1,0.25)");
  EXPECT_EQ(custom.alpha1, 1.0);
  EXPECT_EQ(custom.alpha2, 0.25);
  EXPECT_EQ(ReconstructionLoss::parse(custom.to_string()), custom);
  EXPECT_THROW(ReconstructionLoss::parse("cosine"), UsageError);
  EXPECT_THROW(ReconstructionLoss::parse("directional(-1,0)"), UsageError);
  EXPECT_DOUBLE_EQ(kDirectionalAlpha1, 0.5);
  EXPECT_DOUBLE_EQ(kDirectionalAlpha2, 0.1);
}

TEST(TrainAutoencoder, DeterministicAndImproving) {
  std::mt19937_64 rng(1);
  const Matrix x = oracle::random_matrix(120, 24, rng, 0.1, 0.9);
  const AutoencoderSpec spec = build_audio_ae(24);
  AeTrainConfig c;
  c.epochs = 15;
  c.batch_size = 16;
  c.learning_rate = 3e-3;
  c.seed = 4;
  const TrainedAutoencoder a = train_autoencoder(spec, x, c);
  const TrainedAutoencoder b = train_autoencoder(spec, x, c);
  EXPECT_TRUE(a == b);
  ASSERT_GE(a.history.size(), 2u);
  EXPECT_EQ(a.history[0].epoch, 0u);
  EXPECT_LT(a.final_val_loss(), a.history[0].val_loss);
  EXPECT_EQ(encode(a, x).cols(), spec.bottleneck_dim);
  EXPECT_EQ(reconstruct(a, x), decode(a, encode(a, x)));
  EXPECT_THROW(encode(a, Matrix(2, 23)), ShapeError);

  c.seed = 5;
  EXPECT_FALSE(train_autoencoder(spec, x, c) == a);
}

TEST(TrainAutoencoder, EarlyStoppingRestoresBest) {
  std::mt19937_64 rng(2);
  const Matrix x = oracle::random_matrix(60, 12, rng, 0.0, 1.0);
  AeTrainConfig c;
  c.epochs = 40;
  c.batch_size = 8;
  c.patience = 2;
  c.val_fraction = 0.3;
  const TrainedAutoencoder t = train_autoencoder(build_audio_ae(12), x, c);
  double best = t.history[0].val_loss;
  for (const auto& e : t.history) best = std::min(best, e.val_loss);
  EXPECT_EQ(t.final_val_loss(), best);
  EXPECT_LE(t.history.size() - 1, t.best_epoch + c.patience);
}

TEST(TrainAutoencoder, InputValidation) {
  const AutoencoderSpec spec = build_audio_ae(12);
  AeTrainConfig c;
  c.epochs = 1;
  EXPECT_THROW(train_autoencoder(spec, Matrix(10, 11, 0.5f), c), ShapeError);
  EXPECT_THROW(train_autoencoder(spec, Matrix(10, 12, 1.5f), c), DataError);
  Matrix nan(10, 12, 0.5f);
  nan(3, 3) = std::nanf("");
  EXPECT_THROW(train_autoencoder(spec, nan, c), DataError);
  c.batch_size = 0;
  EXPECT_THROW(train_autoencoder(spec, Matrix(10, 12, 0.5f), c), UsageError);
}

TEST(TrainAutoencoder, DivergenceIsReported) {
  const AutoencoderSpec spec = build_lyrics_ae(64, 16, Activation::kSELU);
  std::mt19937_64 rng(3);
  const Matrix x = oracle::random_matrix(64, 64, rng, -1e18, 1e18);
  AeTrainConfig c;
  c.epochs = 3;
  c.learning_rate = 1e6;
  EXPECT_THROW(train_autoencoder(spec, x, c), DivergenceError);
}

TEST(TrainAutoencoder, HistoryCsv) {
  const std::vector<EpochLoss> h = {{0, 1.5, 2.0}, {1, 0.5, 0.75}};
  EXPECT_EQ(history_csv(h), "epoch,train_loss,val_loss\n0,1.5,2\n1,0.5,0.75\n");
}
