#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lyricnet/dataio/features.hpp"
#include "lyricnet/dataio/split.hpp"
#include "lyricnet/dataio/track.hpp"
#include "lyricnet/evalreport/metrics.hpp"
#include "lyricnet/fusenet/pipeline.hpp"

namespace lyricnet::evalreport {

struct ScvOptions {
  // Worker threads for independent folds / ablation cells. Results do not
  // depend on this value.
  std::size_t jobs = 1;
  fusenet::AeCache* cache = nullptr;
  // Precomputed corpus fingerprint; computed when empty.
  std::string corpus_fingerprint;
};

struct ScvResult {
  MetricsReport report;
  fusenet::TrainedPipeline selected;
  dataio::SplitPlan split;
  std::vector<std::size_t> test_indices;
  std::vector<float> test_predictions;
  std::vector<float> test_targets;
};

// Trains one pipeline per fold (scalers and autoencoders refit on each
// fold's training rows), averages train/val metrics over folds and scores
// the median-val fold's model on the held-out test set.
ScvResult run_scv(const dataio::Corpus& corpus, const fusenet::PipelineConfig& config, const ScvOptions& options = {});

struct AblationCell {
  dataio::ModalityMask mask;
  MetricsReport report;
  std::string split_fingerprint;
};

// One SCV run per mask over a shared split; per-fold autoencoders are
// trained once and reused by every mask that needs them.
std::vector<AblationCell> run_ablation(const dataio::Corpus& corpus, std::span<const dataio::ModalityMask> masks,
                                       const fusenet::PipelineConfig& config, const ScvOptions& options = {});

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for a single value
};

MeanStd mean_std(std::span<const double> values);

struct RepeatedCell {
  dataio::ModalityMask mask;
  std::vector<MetricsReport> runs;  // one per repetition
  MeanStd test_mae;
  MeanStd test_mse;
  MeanStd val_mae;
};

// Root seed of repetition r: the configured seed for r = 0, then derived
// seeds, so a single repetition matches a plain run.
std::uint64_t repeat_seed(std::uint64_t root, std::size_t r);

// run_ablation repeated under `repeats` root seeds; the split is redrawn
// with each seed.
std::vector<RepeatedCell> run_ablation_repeated(const dataio::Corpus& corpus,
                                                std::span<const dataio::ModalityMask> masks,
                                                const fusenet::PipelineConfig& config, std::size_t repeats,
                                                const ScvOptions& options = {});

}  // namespace lyricnet::evalreport
