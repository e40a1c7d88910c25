#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "lyricnet/autoenc/autoencoder.hpp"
#include "lyricnet/dataio/features.hpp"
#include "lyricnet/numcore/activation.hpp"

namespace lyricnet::fusenet {

enum class ModelKind { kFusion, kBaseline };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& name);

struct PipelineConfig {
  ModelKind model = ModelKind::kFusion;
  dataio::ModalityMask mask = dataio::ModalityMask::all();
  // Baseline only: append the six stylometric columns when present.
  bool include_stylometric = false;

  numcore::Activation lyrics_activation = numcore::Activation::kSELU;
  autoenc::ReconstructionLoss lyrics_loss = autoenc::ReconstructionLoss::mse();
  std::size_t bottleneck_divisor = 16;

  std::size_t ae_epochs = 100;
  double ae_lr = 1e-3;
  std::size_t ae_batch = 128;
  double ae_val_fraction = 0.1;
  std::size_t ae_patience = 10;

  double fusion_dropout = 0.2;
  double fusion_lr = 1e-3;
  std::size_t fusion_epochs = 150;
  std::size_t fusion_batch = 128;
  std::size_t fusion_patience = 15;
  // Hidden widths of the fusion net never drop below this; 1 keeps the
  // plain floor schedule.
  std::size_t fusion_min_width = 8;

  std::uint64_t seed = 0;
  std::size_t scv_k = 5;
  std::size_t strat_bins = 10;
  double test_fraction = 0.2;

  void validate() const;
  // Mask actually fed to the model; the baseline never sees lyric embeddings.
  dataio::ModalityMask effective_mask() const;

  bool operator==(const PipelineConfig&) const = default;
};

nlohmann::json to_json(const PipelineConfig& config);
PipelineConfig config_from_json(const nlohmann::json& j);

}  // namespace lyricnet::fusenet
