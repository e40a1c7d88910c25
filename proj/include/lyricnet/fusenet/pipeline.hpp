#pragma once

#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lyricnet/autoenc/autoencoder.hpp"
#include "lyricnet/dataio/features.hpp"
#include "lyricnet/dataio/split.hpp"
#include "lyricnet/dataio/track.hpp"
#include "lyricnet/fusenet/config.hpp"
#include "lyricnet/fusenet/regressor.hpp"

namespace lyricnet::fusenet {

using AePtr = std::shared_ptr<const autoenc::TrainedAutoencoder>;

// Per-block input scaling fitted on training rows: min-max for HH, LL, M and
// stylometrics, z-scores for lyric embeddings.
struct InputScalers {
  std::optional<dataio::MinMaxScaler> hl;
  std::optional<dataio::MinMaxScaler> ll;
  std::optional<dataio::Standardizer> lyr;
  std::optional<dataio::MinMaxScaler> meta;
  std::optional<dataio::MinMaxScaler> stylo;

  bool operator==(const InputScalers&) const = default;
};

struct Provenance {
  std::string corpus_fingerprint;
  std::string split_fingerprint;
  std::uint32_t embedding_dim = 0;
  std::string embedding_source;
  std::size_t fold = 0;
  std::map<std::string, std::uint64_t> seeds;

  bool operator==(const Provenance&) const = default;
};

struct TrainedPipeline {
  PipelineConfig config;
  dataio::ModalityMask mask;  // effective mask
  // Fusion: LL autoencoder. Baseline: the autoencoder over all blocks.
  AePtr audio_ae;
  AePtr lyrics_ae;
  numcore::Network head;
  InputScalers scalers;
  std::vector<RegressorEpoch> head_history;
  std::size_t head_best_epoch = 0;
  Provenance provenance;

  std::size_t head_input_dim() const { return head.in_dim(); }
  // Hash of config, corpus, split and fold; printed next to every metric.
  std::string run_fingerprint() const;
};

// Field-wise equality, comparing autoencoders by value.
bool equivalent(const TrainedPipeline& a, const TrainedPipeline& b);

// Stratified split over the corpus under the config's k, bins, test
// fraction and a seed derived from the root seed.
dataio::SplitPlan make_split(const dataio::Corpus& corpus, const PipelineConfig& config);

// Shares trained autoencoders between runs that agree on corpus, split and
// autoencoder settings (the cells of one ablation grid). Thread-safe; a key
// is trained once even when several jobs ask for it concurrently.
class AeCache {
 public:
  AePtr get_or_train(const std::string& key, const std::function<autoenc::TrainedAutoencoder()>& train);
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_future<AePtr>> entries_;
};

struct TrainContext {
  AeCache* cache = nullptr;
  // Computed from the corpus when empty.
  std::string corpus_fingerprint;
  // When set, receives the eval-mode prediction for every corpus record.
  std::vector<float>* predictions = nullptr;
};

// Stage 1 fits scalers on the training rows of `fold`, stage 2 trains the
// autoencoders on those rows, stage 3 freezes them and trains the head with
// the fold as validation set.
TrainedPipeline train_pipeline(const dataio::Corpus& corpus, const dataio::SplitPlan& split, std::size_t fold,
                               const PipelineConfig& config, const TrainContext& context = {});

// Model inputs (n x head_input_dim) for records.
numcore::Matrix pipeline_inputs(const TrainedPipeline& p, std::span<const dataio::TrackRecord> records);

// Eval-mode popularity predictions in (0, 1).
std::vector<float> predict_batch(const TrainedPipeline& p, std::span<const dataio::TrackRecord> records);

}  // namespace lyricnet::fusenet
