#include "lyricnet/cli/manifest.hpp"

#include "lyricnet/cli/checkpoint.hpp"
#include "lyricnet/errors.hpp"
#include "lyricnet/hashing.hpp"

namespace lyricnet::cli {

using nlohmann::json;

const std::vector<std::string>& interpretation_notes() {
  static const std::vector<std::string> notes = {
      "layer widths use floor division (d/2 -> floor(d/2))",
      "lyrics autoencoder reconstructs through an identity output layer",
      "lyrics bottleneck divisor defaults to 16; 12 is selectable",
      "tied decoder layers share encoder weights only; every layer owns its bias",
      "autoencoders and scalers are fitted on the training rows of each fold only",
      "lyric embeddings are z-scored per dimension before compression",
      "baseline head: three scaled hidden layers (1, 1/2, 1/4 of the bottleneck) plus one sigmoid unit",
      "baseline never receives lyric embeddings; its mask is intersected with HH, LL, M",
      "test metrics come from the fold model with the median validation MAE (lower middle for even k)",
      "fusion early stopping monitors the validation fold MAE",
      "fusion hidden widths are raised to fusion_min_width (default 8) when the floor schedule falls below it",
      "SELU lambda=1.0507009873554805 alpha=1.6732632423543772; GELU uses the tanh form",
      "weights start uniform(+-sqrt(6/(in+out))), or normal(0, sqrt(1/in)) for SELU layers",
      "cosine distance is computed per row and averaged; all-zero rows are rejected",
  };
  return notes;
}

json RunManifest::to_json() const {
  json s = json::object();
  for (const auto& [k, v] : seeds) s[k] = v;
  return json{{"config", config},
              {"corpus_fingerprint", corpus_fingerprint},
              {"split_fingerprint", split_fingerprint},
              {"embedding_dim", embedding_dim},
              {"embedding_source", embedding_source},
              {"fold", fold},
              {"seeds", s},
              {"run_fingerprint", run_fingerprint},
              {"tool_version", tool_version},
              {"interpretation_notes", interpretation_notes},
              {"model", model}};
}

RunManifest RunManifest::from_json(const json& j) {
  try {
    RunManifest m;
    m.config = j.at("config");
    m.corpus_fingerprint = j.at("corpus_fingerprint").get<std::string>();
    m.split_fingerprint = j.at("split_fingerprint").get<std::string>();
    m.embedding_dim = j.at("embedding_dim").get<std::uint32_t>();
    m.embedding_source = j.at("embedding_source").get<std::string>();
    m.fold = j.at("fold").get<std::size_t>();
    for (const auto& [k, v] : j.at("seeds").items()) m.seeds[k] = v.get<std::uint64_t>();
    m.run_fingerprint = j.at("run_fingerprint").get<std::string>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.interpretation_notes = j.at("interpretation_notes").get<std::vector<std::string>>();
    m.model = j.at("model");
    return m;
  } catch (const json::exception& e) {
    throw IntegrityError(std::string("run manifest: ") + e.what());
  }
}

std::string RunManifest::canonical() const { return to_json().dump(); }

std::string RunManifest::hash() const { return to_hex(sha256(canonical())); }

RunManifest build_manifest(const fusenet::TrainedPipeline& p) {
  RunManifest m;
  m.config = fusenet::to_json(p.config);
  m.corpus_fingerprint = p.provenance.corpus_fingerprint;
  m.split_fingerprint = p.provenance.split_fingerprint;
  m.embedding_dim = p.provenance.embedding_dim;
  m.embedding_source = p.provenance.embedding_source;
  m.fold = p.provenance.fold;
  m.seeds = p.provenance.seeds;
  m.run_fingerprint = p.run_fingerprint();
  m.interpretation_notes = interpretation_notes();
  m.model = structure_to_json(p);
  return m;
}

}  // namespace lyricnet::cli
