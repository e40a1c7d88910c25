#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lyricnet/fusenet/pipeline.hpp"

namespace lyricnet::cli {

inline constexpr std::string_view kToolVersion = "1.0.0";

// Fixed statements for every choice the method description leaves open.
const std::vector<std::string>& interpretation_notes();

struct RunManifest {
  nlohmann::json config;
  std::string corpus_fingerprint;
  std::string split_fingerprint;
  std::uint32_t embedding_dim = 0;
  std::string embedding_source;
  std::size_t fold = 0;
  std::map<std::string, std::uint64_t> seeds;
  std::string run_fingerprint;
  std::string tool_version{kToolVersion};
  std::vector<std::string> interpretation_notes;
  // Network topologies, training histories and scaler layout.
  nlohmann::json model;

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);
  // Keys sorted at every level, so the text (and hash) does not depend on
  // the order fields were inserted.
  std::string canonical() const;
  std::string hash() const;

  bool operator==(const RunManifest&) const = default;
};

RunManifest build_manifest(const fusenet::TrainedPipeline& p);

}  // namespace lyricnet::cli
