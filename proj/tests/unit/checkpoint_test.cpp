#include <gtest/gtest.h>

#include <filesystem>

#include "lyricnet/cli/checkpoint.hpp"
#include "lyricnet/cli/manifest.hpp"
#include "lyricnet/dataio/synth.hpp"
#include "lyricnet/errors.hpp"
#include "lyricnet/fusenet/pipeline.hpp"

using namespace lyricnet;
using namespace lyricnet::cli;

namespace {

struct Fixture {
  dataio::Corpus corpus;
  fusenet::TrainedPipeline pipeline;
};

const Fixture& trained(fusenet::ModelKind kind) {
  auto make = [](fusenet::ModelKind k) {
    Fixture f;
    dataio::SynthOptions o;
    o.n = 120;
    o.seed = 8;
    o.embedding_dim = 32;
    f.corpus = dataio::synth_dataset(o);
    fusenet::PipelineConfig c;
    c.model = k;
    c.scv_k = 2;
    c.strat_bins = 2;
    c.ae_epochs = 2;
    c.fusion_epochs = 2;
    f.pipeline = fusenet::train_pipeline(f.corpus, fusenet::make_split(f.corpus, c), 1, c);
    return f;
  };
  static const Fixture fusion = make(fusenet::ModelKind::kFusion);
  static const Fixture baseline = make(fusenet::ModelKind::kBaseline);
  return kind == fusenet::ModelKind::kFusion ? fusion : baseline;
}

}  // namespace

TEST(Checkpoint, PipelineRoundTripPredictsIdentically) {
  for (auto kind : {fusenet::ModelKind::kFusion, fusenet::ModelKind::kBaseline}) {
    const Fixture& f = trained(kind);
    const auto bytes = encode_checkpoint(to_container(f.pipeline));
    const fusenet::TrainedPipeline back = from_container(decode_checkpoint(bytes));
    EXPECT_TRUE(fusenet::equivalent(back, f.pipeline));
    EXPECT_EQ(fusenet::predict_batch(back, f.corpus.records), fusenet::predict_batch(f.pipeline, f.corpus.records));
    EXPECT_EQ(encode_checkpoint(to_container(back)), bytes);
  }
}

TEST(Checkpoint, FileRoundTripAndManifest) {
  const Fixture& f = trained(fusenet::ModelKind::kFusion);
  const auto path = std::filesystem::temp_directory_path() / "lyricnet_unit_model.lnckpt";
  save_pipeline(f.pipeline, path);
  RunManifest m;
  const fusenet::TrainedPipeline back = load_pipeline(path, &m);
  EXPECT_TRUE(fusenet::equivalent(back, f.pipeline));
  EXPECT_EQ(m.run_fingerprint, f.pipeline.run_fingerprint());
  EXPECT_EQ(m.fold, 1u);
  EXPECT_EQ(m.interpretation_notes, interpretation_notes());
  EXPECT_EQ(m.corpus_fingerprint, dataio::corpus_fingerprint(f.corpus));
}

TEST(Checkpoint, TensorOrderFollowsParameterEnumeration) {
  const auto c = to_container(trained(fusenet::ModelKind::kFusion).pipeline);
  ASSERT_FALSE(c.tensors.empty());
  EXPECT_EQ(c.tensors.front().name, "audio_ae/layer0.weight");
  std::size_t last_prefix = 0;
  const std::vector<std::string> prefixes = {"audio_ae/", "lyrics_ae/", "head/", "scaler/"};
  for (const auto& t : c.tensors) {
    std::size_t p = 0;
    while (p < prefixes.size() && !t.name.starts_with(prefixes[p])) ++p;
    ASSERT_LT(p, prefixes.size()) << t.name;
    EXPECT_GE(p, last_prefix) << t.name;
    last_prefix = p;
  }
}

TEST(Checkpoint, CorruptionIsDetected) {
  const auto bytes = encode_checkpoint(to_container(trained(fusenet::ModelKind::kFusion).pipeline));
  auto flipped = bytes;
  flipped[bytes.size() / 2] ^= 0x01;
  EXPECT_THROW(decode_checkpoint(flipped), IntegrityError);
  auto truncated = bytes;
  truncated.resize(bytes.size() - 100);
  EXPECT_THROW(decode_checkpoint(truncated), IntegrityError);
  EXPECT_THROW(decode_checkpoint(std::vector<std::uint8_t>(10, 0)), IntegrityError);
  auto version = bytes;
  version[6] = '2';
  try {
    decode_checkpoint(version);
    FAIL() << "expected IntegrityError";
  } catch (const IntegrityError& e) {
    EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
  }
  auto magic = bytes;
  magic[0] = 'X';
  EXPECT_THROW(decode_checkpoint(magic), IntegrityError);
}

TEST(Checkpoint, MissingOrReshapedTensorRejected) {
  const auto good = to_container(trained(fusenet::ModelKind::kFusion).pipeline);
  auto missing = good;
  missing.tensors.pop_back();
  EXPECT_THROW(from_container(decode_checkpoint(encode_checkpoint(missing))), IntegrityError);
  auto reshaped = good;
  std::swap(reshaped.tensors.front().dims.front(), reshaped.tensors.front().dims.back());
  EXPECT_THROW(from_container(reshaped), IntegrityError);
  auto extra = good;
  extra.tensors.push_back({"head/bogus", {1}, {0.0f}});
  EXPECT_THROW(from_container(extra), IntegrityError);
  auto bad_dims = good;
  bad_dims.tensors.front().data.pop_back();
  EXPECT_THROW(encode_checkpoint(bad_dims), ShapeError);
}

TEST(Manifest, CanonicalHashIsStable) {
  const RunManifest m = build_manifest(trained(fusenet::ModelKind::kFusion).pipeline);
  const RunManifest back = RunManifest::from_json(nlohmann::json::parse(m.canonical()));
  EXPECT_EQ(back, m);
  EXPECT_EQ(back.hash(), m.hash());
  EXPECT_EQ(m.hash().size(), 64u);
  RunManifest changed = m;
  changed.fold = 0;
  EXPECT_NE(changed.hash(), m.hash());
  EXPECT_THROW(RunManifest::from_json(nlohmann::json::object()), IntegrityError);
}
