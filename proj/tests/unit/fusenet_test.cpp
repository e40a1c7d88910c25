#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lyricnet/dataio/synth.hpp"
#include "lyricnet/errors.hpp"
#include "lyricnet/fusenet/config.hpp"
#include "lyricnet/fusenet/models.hpp"
#include "lyricnet/fusenet/pipeline.hpp"
#include "lyricnet/fusenet/regressor.hpp"
#include "oracles.hpp"

using namespace lyricnet;
using namespace lyricnet::fusenet;
using dataio::ModalityMask;

namespace {

dataio::Corpus tiny_corpus(std::size_t n = 160) {
  dataio::SynthOptions o;
  o.n = n;
  o.seed = 21;
  o.embedding_dim = 32;
  return dataio::synth_dataset(o);
}

PipelineConfig tiny_config() {
  PipelineConfig c;
  c.scv_k = 2;
  c.strat_bins = 2;
  c.ae_epochs = 2;
  c.fusion_epochs = 3;
  c.ae_batch = 32;
  c.fusion_batch = 32;
  c.seed = 5;
  return c;
}

}  // namespace

TEST(FusionNet, FloorScheduleByDefault) {
  const auto layers = fusenet_layers(92);
  ASSERT_EQ(layers.size(), 4u);
  EXPECT_EQ(layers[0].out_dim, 92u);
  EXPECT_EQ(layers[1].out_dim, 46u);
  EXPECT_EQ(layers[2].out_dim, 30u);
  EXPECT_EQ(layers[3].out_dim, 1u);
  EXPECT_EQ(layers[3].activation, numcore::Activation::kSigmoid);
  for (std::size_t l = 0; l < 3; ++l) EXPECT_EQ(layers[l].activation, numcore::Activation::kReLU);
  EXPECT_THROW(fusenet_layers(2), UsageError);
}

TEST(FusionNet, MinWidthRaisesNarrowLayers) {
  const auto plain = fusenet_layers(3);
  EXPECT_EQ(plain[1].out_dim, 1u);
  EXPECT_EQ(plain[2].out_dim, 1u);
  const auto wide = fusenet_layers(3, 8);
  EXPECT_EQ(wide[0].out_dim, 8u);
  EXPECT_EQ(wide[1].out_dim, 8u);
  EXPECT_EQ(wide[2].out_dim, 8u);
  EXPECT_EQ(fusenet_layers(92, 8), fusenet_layers(92));
  EXPECT_THROW(fusenet_layers(10, 0), UsageError);
}

TEST(Baseline, HeadOnBottleneck) {
  const BaselineSpec b = build_baseline(225);
  EXPECT_EQ(b.autoencoder.bottleneck_dim, 45u);
  EXPECT_EQ(b.autoencoder.encoder_dims, (std::vector<std::size_t>{112, 75}));
  ASSERT_EQ(b.head.size(), 4u);
  EXPECT_EQ(b.head[0].in_dim, 45u);
  EXPECT_EQ(b.head[1].out_dim, 22u);
  EXPECT_EQ(b.head[2].out_dim, 11u);
  EXPECT_THROW(baseline_head_layers(3), UsageError);
}

TEST(Config, JsonRoundTripAndValidation) {
  PipelineConfig c = tiny_config();
  c.mask = ModalityMask::parse("LR,M");
  c.lyrics_loss = autoenc::ReconstructionLoss::directional();
  c.bottleneck_divisor = 12;
  EXPECT_EQ(config_from_json(to_json(c)), c);
  EXPECT_NO_THROW(c.validate());
  PipelineConfig bad = c;
  bad.scv_k = 1;
  EXPECT_THROW(bad.validate(), UsageError);
  bad = c;
  bad.bottleneck_divisor = 8;
  EXPECT_THROW(bad.validate(), UsageError);
  bad = c;
  bad.fusion_dropout = 1.0;
  EXPECT_THROW(bad.validate(), UsageError);
  bad = c;
  bad.model = ModelKind::kBaseline;
  bad.mask = ModalityMask::parse("LR");
  EXPECT_THROW(bad.validate(), UsageError);
  EXPECT_THROW(config_from_json(nlohmann::json{{"model", 3}}), IntegrityError);
}

TEST(Config, BaselineDropsLyricEmbeddings) {
  PipelineConfig c;
  c.model = ModelKind::kBaseline;
  EXPECT_EQ(c.effective_mask(), ModalityMask::parse("HH,LL,M"));
  c.model = ModelKind::kFusion;
  EXPECT_EQ(c.effective_mask(), ModalityMask::all());
}

TEST(Regressor, LearnsLinearTargetAndStopsEarly) {
  std::mt19937_64 rng(3);
  const numcore::Matrix x = oracle::random_matrix(400, 4, rng, 0.0, 1.0);
  std::vector<float> y(400);
  for (std::size_t i = 0; i < 400; ++i) y[i] = 0.2f + 0.3f * x(i, 0) + 0.2f * x(i, 1);
  const std::vector<std::size_t> tr_idx = [] {
    std::vector<std::size_t> v(300);
    for (std::size_t i = 0; i < 300; ++i) v[i] = i;
    return v;
  }();
  std::vector<std::size_t> va_idx;
  for (std::size_t i = 300; i < 400; ++i) va_idx.push_back(i);
  const auto xt = numcore::select_rows(x, tr_idx), xv = numcore::select_rows(x, va_idx);
  const std::span<const float> yt(y.data(), 300), yv(y.data() + 300, 100);
  RegressorTrainConfig c;
  c.epochs = 60;
  c.batch_size = 32;
  c.learning_rate = 3e-3;
  c.dropout = 0.0;
  c.patience = 5;
  const TrainedRegressor r = train_regressor(build_fusenet(4, 1, 8), xt, yt, xv, yv, c);
  EXPECT_LT(r.history[r.best_epoch].val_mae, 0.5 * r.history[0].val_mae);
  double best = 1e9;
  for (const auto& e : r.history) best = std::min(best, e.val_mae);
  EXPECT_EQ(r.history[r.best_epoch].val_mae, best);
  const auto pv = predict_values(r.net, xv);
  double mae = 0.0;
  for (std::size_t i = 0; i < 100; ++i) mae += std::abs(pv[i] - yv[i]);
  EXPECT_NEAR(mae / 100.0, best, 1e-6);
  EXPECT_THROW(train_regressor(build_fusenet(4, 1), xt, yv, xv, yv, c), ShapeError);
}

TEST(Pipeline, TrainIsDeterministicAndPredictsInRange) {
  const dataio::Corpus corpus = tiny_corpus();
  const PipelineConfig c = tiny_config();
  const dataio::SplitPlan split = make_split(corpus, c);
  const TrainedPipeline a = train_pipeline(corpus, split, 0, c);
  const TrainedPipeline b = train_pipeline(corpus, split, 0, c);
  EXPECT_TRUE(equivalent(a, b));
  EXPECT_EQ(a.run_fingerprint(), b.run_fingerprint());
  // LL bottleneck 41, lyrics bottleneck 32/16, HH 13, M 3.
  EXPECT_EQ(a.head_input_dim(), 41u + 2u + 13u + 3u);
  const auto preds = predict_batch(a, corpus.records);
  ASSERT_EQ(preds.size(), corpus.records.size());
  for (float p : preds) {
    EXPECT_GT(p, 0.0f);
    EXPECT_LT(p, 1.0f);
  }
  EXPECT_EQ(preds, predict_batch(b, corpus.records));
  EXPECT_NE(train_pipeline(corpus, split, 1, c).run_fingerprint(), a.run_fingerprint());
  EXPECT_THROW(train_pipeline(corpus, split, 2, c), UsageError);
}

TEST(Pipeline, MaskControlsInputsAndAutoencoders) {
  const dataio::Corpus corpus = tiny_corpus();
  PipelineConfig c = tiny_config();
  c.mask = ModalityMask::parse("HH,M");
  const TrainedPipeline p = train_pipeline(corpus, make_split(corpus, c), 0, c);
  EXPECT_EQ(p.head_input_dim(), 16u);
  EXPECT_FALSE(p.audio_ae);
  EXPECT_FALSE(p.lyrics_ae);
  EXPECT_EQ(p.head.layers()[1].out_dim, 8u);
}

TEST(Pipeline, CacheSharesAutoencodersAcrossMasks) {
  const dataio::Corpus corpus = tiny_corpus();
  PipelineConfig c = tiny_config();
  const dataio::SplitPlan split = make_split(corpus, c);
  AeCache cache;
  TrainContext ctx;
  ctx.cache = &cache;
  const TrainedPipeline full = train_pipeline(corpus, split, 0, c, ctx);
  EXPECT_EQ(cache.size(), 2u);
  c.mask = ModalityMask::parse("LL,M");
  const TrainedPipeline ll = train_pipeline(corpus, split, 0, c, ctx);
  EXPECT_EQ(cache.size(), 2u);
  EXPECT_EQ(ll.audio_ae.get(), full.audio_ae.get());
}

TEST(Pipeline, BaselineTrains) {
  const dataio::Corpus corpus = tiny_corpus();
  PipelineConfig c = tiny_config();
  c.model = ModelKind::kBaseline;
  const TrainedPipeline p = train_pipeline(corpus, make_split(corpus, c), 0, c);
  EXPECT_EQ(p.mask, ModalityMask::parse("HH,LL,M"));
  EXPECT_FALSE(p.lyrics_ae);
  ASSERT_TRUE(p.audio_ae);
  EXPECT_EQ(p.audio_ae->spec.input_dim, 13u + 209u + 3u);
  EXPECT_EQ(p.head_input_dim(), 45u);
}

TEST(Pipeline, RejectsMisalignedSplit) {
  const dataio::Corpus corpus = tiny_corpus();
  const PipelineConfig c = tiny_config();
  const dataio::SplitPlan split = make_split(tiny_corpus(120), c);
  EXPECT_THROW(train_pipeline(corpus, split, 0, c), DataError);
}
