#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lyricnet/cli/manifest.hpp"
#include "lyricnet/fusenet/pipeline.hpp"

namespace lyricnet::cli {

// Checkpoint container, little-endian:
//   "LNCKPT1"
//   u32 manifest_len | manifest JSON (canonical)
//   u32 tensor_count
//   per tensor: u16 name_len | name | u32 ndims | u32 dims[ndims] | f32 data
//   32-byte SHA-256 of every preceding byte
inline constexpr std::string_view kCheckpointMagic = "LNCKPT1";

struct NamedTensor {
  std::string name;
  std::vector<std::uint32_t> dims;
  std::vector<float> data;

  bool operator==(const NamedTensor&) const = default;
};

struct CheckpointContainer {
  RunManifest manifest;
  std::vector<NamedTensor> tensors;

  bool operator==(const CheckpointContainer&) const = default;
};

std::vector<std::uint8_t> encode_checkpoint(const CheckpointContainer& c);
// Verifies magic and checksum before parsing anything else.
CheckpointContainer decode_checkpoint(std::span<const std::uint8_t> bytes);
void save_checkpoint(const CheckpointContainer& c, const std::filesystem::path& path);
CheckpointContainer load_checkpoint(const std::filesystem::path& path);

// Topologies, histories and scaler layout of a pipeline (manifest "model").
nlohmann::json structure_to_json(const fusenet::TrainedPipeline& p);

// Tensors in parameter-enumeration order: audio_ae/*, lyrics_ae/*, head/*,
// then scaler/*.
CheckpointContainer to_container(const fusenet::TrainedPipeline& p);
fusenet::TrainedPipeline from_container(const CheckpointContainer& c);

void save_pipeline(const fusenet::TrainedPipeline& p, const std::filesystem::path& path);
fusenet::TrainedPipeline load_pipeline(const std::filesystem::path& path, RunManifest* manifest = nullptr);

}  // namespace lyricnet::cli
