#include "lyricnet/fusenet/config.hpp"

#include "lyricnet/errors.hpp"

namespace lyricnet::fusenet {

using nlohmann::json;

std::string to_string(ModelKind kind) { return kind == ModelKind::kBaseline ? "baseline" : "fusion"; }

ModelKind parse_model_kind(const std::string& name) {
  if (name == "fusion") return ModelKind::kFusion;
  if (name == "baseline") return ModelKind::kBaseline;
  throw UsageError("unknown model '" + name + "' (expected fusion|baseline)");
}

void PipelineConfig::validate() const {
  if (mask.empty()) throw UsageError("config: modality mask is empty");
  if (effective_mask().empty()) throw UsageError("config: baseline needs at least one of HH, LL, M");
  if (!(fusion_dropout >= 0.0 && fusion_dropout < 1.0)) throw UsageError("config: fusion_dropout must lie in [0, 1)");
  if (fusion_min_width == 0) throw UsageError("config: fusion_min_width must be positive");
  if (scv_k < 2) throw UsageError("config: scv_k must be at least 2");
  if (strat_bins < 1) throw UsageError("config: strat_bins must be positive");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw UsageError("config: test_fraction must lie in (0, 1)");
  if (bottleneck_divisor != 12 && bottleneck_divisor != 16) {
    throw UsageError("config: bottleneck_divisor must be 12 or 16");
  }
  if (!(ae_lr > 0.0) || !(fusion_lr > 0.0)) throw UsageError("config: learning rates must be positive");
  if (ae_batch == 0 || fusion_batch == 0) throw UsageError("config: batch sizes must be positive");
  if (!(ae_val_fraction >= 0.0 && ae_val_fraction < 1.0)) throw UsageError("config: ae_val_fraction must lie in [0, 1)");
}

dataio::ModalityMask PipelineConfig::effective_mask() const {
  if (model == ModelKind::kFusion) return mask;
  dataio::ModalityMask m = mask;
  m.lr = false;
  return m;
}

json to_json(const PipelineConfig& c) {
  return json{
      {"model", to_string(c.model)},
      {"mask", c.mask.to_string()},
      {"include_stylometric", c.include_stylometric},
      {"lyrics_activation", std::string(numcore::to_string(c.lyrics_activation))},
      {"lyrics_loss", c.lyrics_loss.to_string()},
      {"bottleneck_divisor", c.bottleneck_divisor},
      {"ae_epochs", c.ae_epochs},
      {"ae_lr", c.ae_lr},
      {"ae_batch", c.ae_batch},
      {"ae_val_fraction", c.ae_val_fraction},
      {"ae_patience", c.ae_patience},
      {"fusion_dropout", c.fusion_dropout},
      {"fusion_lr", c.fusion_lr},
      {"fusion_epochs", c.fusion_epochs},
      {"fusion_batch", c.fusion_batch},
      {"fusion_patience", c.fusion_patience},
      {"fusion_min_width", c.fusion_min_width},
      {"seed", c.seed},
      {"scv_k", c.scv_k},
      {"strat_bins", c.strat_bins},
      {"test_fraction", c.test_fraction},
  };
}

PipelineConfig config_from_json(const json& j) {
  try {
    PipelineConfig c;
    c.model = parse_model_kind(j.at("model").get<std::string>());
    c.mask = dataio::ModalityMask::parse(j.at("mask").get<std::string>());
    c.include_stylometric = j.at("include_stylometric").get<bool>();
    c.lyrics_activation = numcore::parse_activation(j.at("lyrics_activation").get<std::string>());
    c.lyrics_loss = autoenc::ReconstructionLoss::parse(j.at("lyrics_loss").get<std::string>());
    c.bottleneck_divisor = j.at("bottleneck_divisor").get<std::size_t>();
    c.ae_epochs = j.at("ae_epochs").get<std::size_t>();
    c.ae_lr = j.at("ae_lr").get<double>();
    c.ae_batch = j.at("ae_batch").get<std::size_t>();
    c.ae_val_fraction = j.at("ae_val_fraction").get<double>();
    c.ae_patience = j.at("ae_patience").get<std::size_t>();
    c.fusion_dropout = j.at("fusion_dropout").get<double>();
    c.fusion_lr = j.at("fusion_lr").get<double>();
    c.fusion_epochs = j.at("fusion_epochs").get<std::size_t>();
    c.fusion_batch = j.at("fusion_batch").get<std::size_t>();
    c.fusion_patience = j.at("fusion_patience").get<std::size_t>();
    c.fusion_min_width = j.at("fusion_min_width").get<std::size_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.scv_k = j.at("scv_k").get<std::size_t>();
    c.strat_bins = j.at("strat_bins").get<std::size_t>();
    c.test_fraction = j.at("test_fraction").get<double>();
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw IntegrityError(std::string("pipeline config: ") + e.what());
  }
}

}  // namespace lyricnet::fusenet
