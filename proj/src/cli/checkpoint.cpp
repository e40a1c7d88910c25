#include "lyricnet/cli/checkpoint.hpp"

#include <algorithm>
#include <map>

#include "lyricnet/binary_io.hpp"
#include "lyricnet/errors.hpp"
#include "lyricnet/hashing.hpp"

namespace lyricnet::cli {

using nlohmann::json;
using numcore::Matrix;
using numcore::Network;

namespace {

constexpr std::size_t kDigestSize = 32;

json layers_to_json(const std::vector<numcore::LayerSpec>& layers) {
  json out = json::array();
  for (const numcore::LayerSpec& l : layers) {
    out.push_back(json{{"in", l.in_dim},
                       {"out", l.out_dim},
                       {"activation", std::string(numcore::to_string(l.activation))},
                       {"tied_to", l.tied_to ? json(*l.tied_to) : json(nullptr)}});
  }
  return out;
}

std::vector<numcore::LayerSpec> layers_from_json(const json& j) {
  std::vector<numcore::LayerSpec> out;
  for (const json& l : j) {
    numcore::LayerSpec s;
    s.in_dim = l.at("in").get<std::size_t>();
    s.out_dim = l.at("out").get<std::size_t>();
    s.activation = numcore::parse_activation(l.at("activation").get<std::string>());
    if (!l.at("tied_to").is_null()) s.tied_to = l.at("tied_to").get<std::size_t>();
    out.push_back(s);
  }
  return out;
}

json ae_to_json(const fusenet::AePtr& ae) {
  if (!ae) return nullptr;
  const autoenc::AutoencoderSpec& s = ae->spec;
  json history = json::array();
  for (const autoenc::EpochLoss& e : ae->history) history.push_back(json::array({e.epoch, e.train_loss, e.val_loss}));
  return json{{"spec",
               {{"input_dim", s.input_dim},
                {"encoder_dims", s.encoder_dims},
                {"bottleneck_dim", s.bottleneck_dim},
                {"activation", std::string(numcore::to_string(s.activation))},
                {"output_activation", std::string(numcore::to_string(s.output_activation))},
                {"tied", s.tied},
                {"loss", s.loss.to_string()}}},
              {"seed", ae->params.seed()},
              {"history", history},
              {"best_epoch", ae->best_epoch},
              {"train_fingerprint", ae->train_fingerprint}};
}

json scaler_layout(const fusenet::InputScalers& s) {
  return json{{"hl", s.hl.has_value()},
              {"ll", s.ll.has_value()},
              {"lyr", s.lyr.has_value()},
              {"meta", s.meta.has_value()},
              {"stylo", s.stylo.has_value()}};
}

void push_network(std::vector<NamedTensor>& out, const std::string& prefix, const Network& net) {
  for (const numcore::ParameterView& p : net.parameters()) {
    NamedTensor t;
    t.name = prefix + "/" + p.name;
    const bool is_bias = p.name.ends_with(".bias");
    t.dims = is_bias ? std::vector<std::uint32_t>{static_cast<std::uint32_t>(p.cols)}
                     : std::vector<std::uint32_t>{static_cast<std::uint32_t>(p.rows), static_cast<std::uint32_t>(p.cols)};
    t.data.assign(p.values.begin(), p.values.end());
    out.push_back(std::move(t));
  }
}

void push_vector(std::vector<NamedTensor>& out, const std::string& name, const std::vector<float>& v) {
  out.push_back({name, {static_cast<std::uint32_t>(v.size())}, v});
}

class TensorIndex {
 public:
  explicit TensorIndex(const std::vector<NamedTensor>& tensors) {
    for (const NamedTensor& t : tensors) {
      if (!by_name_.emplace(t.name, &t).second) throw IntegrityError("checkpoint: duplicate tensor " + t.name);
    }
  }

  const NamedTensor& get(const std::string& name, std::vector<std::uint32_t> dims) {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw IntegrityError("checkpoint: missing tensor " + name);
    if (it->second->dims != dims) throw IntegrityError("checkpoint: tensor " + name + " has unexpected shape");
    ++used_;
    return *it->second;
  }

  void require_all_used() const {
    if (used_ != by_name_.size()) throw IntegrityError("checkpoint: unexpected extra tensors");
  }

 private:
  std::map<std::string, const NamedTensor*> by_name_;
  std::size_t used_ = 0;
};

Network network_from(TensorIndex& index, const std::string& prefix, std::vector<numcore::LayerSpec> layers,
                     std::uint64_t seed) {
  std::vector<Matrix> weights(layers.size());
  std::vector<std::vector<float>> biases(layers.size());
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& s = layers[l];
    const std::string base = prefix + "/layer" + std::to_string(l);
    if (!s.tied_to) {
      const NamedTensor& w =
          index.get(base + ".weight", {static_cast<std::uint32_t>(s.in_dim), static_cast<std::uint32_t>(s.out_dim)});
      weights[l] = Matrix(s.in_dim, s.out_dim, w.data);
    }
    biases[l] = index.get(base + ".bias", {static_cast<std::uint32_t>(s.out_dim)}).data;
  }
  return Network(std::move(layers), std::move(weights), std::move(biases), seed);
}

fusenet::AePtr ae_from(TensorIndex& index, const std::string& prefix, const json& j) {
  if (j.is_null()) return nullptr;
  autoenc::TrainedAutoencoder ae;
  const json& s = j.at("spec");
  ae.spec.input_dim = s.at("input_dim").get<std::size_t>();
  ae.spec.encoder_dims = s.at("encoder_dims").get<std::vector<std::size_t>>();
  ae.spec.bottleneck_dim = s.at("bottleneck_dim").get<std::size_t>();
  ae.spec.activation = numcore::parse_activation(s.at("activation").get<std::string>());
  ae.spec.output_activation = numcore::parse_activation(s.at("output_activation").get<std::string>());
  ae.spec.tied = s.at("tied").get<bool>();
  ae.spec.loss = autoenc::ReconstructionLoss::parse(s.at("loss").get<std::string>());
  for (const json& e : j.at("history")) {
    ae.history.push_back({e.at(0).get<std::size_t>(), e.at(1).get<double>(), e.at(2).get<double>()});
  }
  ae.best_epoch = j.at("best_epoch").get<std::size_t>();
  ae.train_fingerprint = j.at("train_fingerprint").get<std::string>();
  ae.params = network_from(index, prefix, ae.spec.layer_specs(), j.at("seed").get<std::uint64_t>());
  return std::make_shared<const autoenc::TrainedAutoencoder>(std::move(ae));
}

template <typename Scaler>
std::optional<Scaler> minmax_from(TensorIndex& index, const json& layout, const char* key, std::size_t width) {
  if (!layout.at(key).get<bool>()) return std::nullopt;
  const std::string base = std::string("scaler/") + key;
  Scaler s;
  s.min = index.get(base + ".min", {static_cast<std::uint32_t>(width)}).data;
  s.max = index.get(base + ".max", {static_cast<std::uint32_t>(width)}).data;
  return s;
}

}  // namespace

std::vector<std::uint8_t> encode_checkpoint(const CheckpointContainer& c) {
  ByteWriter out;
  out.put_raw(kCheckpointMagic);
  out.put_string_u32(c.manifest.canonical());
  out.put_u32(static_cast<std::uint32_t>(c.tensors.size()));
  for (const NamedTensor& t : c.tensors) {
    std::size_t count = 1;
    for (std::uint32_t d : t.dims) count *= d;
    if (count != t.data.size()) throw ShapeError("checkpoint: tensor " + t.name + " dims disagree with its data");
    out.put_string_u16(t.name);
    out.put_u32(static_cast<std::uint32_t>(t.dims.size()));
    for (std::uint32_t d : t.dims) out.put_u32(d);
    out.put_f32s(t.data);
  }
  const Digest digest = sha256(out.bytes());
  out.put_bytes(digest);
  return out.take();
}

CheckpointContainer decode_checkpoint(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kCheckpointMagic.size() + kDigestSize) throw IntegrityError("checkpoint: truncated file");
  const std::string_view head(reinterpret_cast<const char*>(bytes.data()), kCheckpointMagic.size());
  if (head != kCheckpointMagic) {
    if (head.starts_with("LNCKPT")) throw IntegrityError("checkpoint: unknown version '" + std::string(head) + "'");
    throw IntegrityError("checkpoint: bad magic");
  }
  const auto body = bytes.first(bytes.size() - kDigestSize);
  const Digest expected = sha256(body);
  if (!std::equal(expected.begin(), expected.end(), bytes.end() - kDigestSize)) {
    throw IntegrityError("checkpoint: checksum mismatch (file corrupted or truncated)");
  }

  ByteReader in(body, "checkpoint");
  in.raw(kCheckpointMagic.size(), "magic");
  CheckpointContainer c;
  try {
    c.manifest = RunManifest::from_json(json::parse(in.string_u32("manifest")));
  } catch (const json::exception& e) {
    throw IntegrityError(std::string("checkpoint: manifest is not valid JSON: ") + e.what());
  }
  const std::uint32_t count = in.u32("tensor count");
  for (std::uint32_t i = 0; i < count; ++i) {
    NamedTensor t;
    t.name = in.string_u16("tensor name");
    const std::uint32_t ndims = in.u32("tensor rank");
    if (ndims > 8) throw IntegrityError("checkpoint: tensor " + t.name + " has implausible rank");
    std::uint64_t elems = 1;
    for (std::uint32_t d = 0; d < ndims; ++d) {
      t.dims.push_back(in.u32("tensor dim"));
      elems *= t.dims.back();
      if (elems * 4 > in.remaining()) throw IntegrityError("checkpoint: tensor " + t.name + " exceeds file size");
    }
    t.data.resize(elems);
    in.f32s(t.data, "tensor data");
    c.tensors.push_back(std::move(t));
  }
  if (!in.at_end()) throw IntegrityError("checkpoint: trailing bytes before checksum");
  return c;
}

void save_checkpoint(const CheckpointContainer& c, const std::filesystem::path& path) {
  write_file_bytes(path, encode_checkpoint(c));
}

CheckpointContainer load_checkpoint(const std::filesystem::path& path) { return decode_checkpoint(read_file_bytes(path)); }

json structure_to_json(const fusenet::TrainedPipeline& p) {
  json history = json::array();
  for (const fusenet::RegressorEpoch& e : p.head_history) {
    history.push_back(json::array({e.epoch, e.train_mse, e.val_mse, e.val_mae}));
  }
  return json{{"mask", p.mask.to_string()},
              {"audio_ae", ae_to_json(p.audio_ae)},
              {"lyrics_ae", ae_to_json(p.lyrics_ae)},
              {"head",
               {{"layers", layers_to_json(p.head.layers())},
                {"seed", p.head.seed()},
                {"history", history},
                {"best_epoch", p.head_best_epoch}}},
              {"scalers", scaler_layout(p.scalers)},
              {"lyr_width", p.scalers.lyr ? p.scalers.lyr->mean.size() : 0}};
}

CheckpointContainer to_container(const fusenet::TrainedPipeline& p) {
  CheckpointContainer c;
  c.manifest = build_manifest(p);
  if (p.audio_ae) push_network(c.tensors, "audio_ae", p.audio_ae->params);
  if (p.lyrics_ae) push_network(c.tensors, "lyrics_ae", p.lyrics_ae->params);
  push_network(c.tensors, "head", p.head);
  const auto& s = p.scalers;
  if (s.hl) {
    push_vector(c.tensors, "scaler/hl.min", s.hl->min);
    push_vector(c.tensors, "scaler/hl.max", s.hl->max);
  }
  if (s.ll) {
    push_vector(c.tensors, "scaler/ll.min", s.ll->min);
    push_vector(c.tensors, "scaler/ll.max", s.ll->max);
  }
  if (s.lyr) {
    push_vector(c.tensors, "scaler/lyr.mean", s.lyr->mean);
    push_vector(c.tensors, "scaler/lyr.stddev", s.lyr->stddev);
  }
  if (s.meta) {
    push_vector(c.tensors, "scaler/meta.min", s.meta->min);
    push_vector(c.tensors, "scaler/meta.max", s.meta->max);
  }
  if (s.stylo) {
    push_vector(c.tensors, "scaler/stylo.min", s.stylo->min);
    push_vector(c.tensors, "scaler/stylo.max", s.stylo->max);
  }
  return c;
}

fusenet::TrainedPipeline from_container(const CheckpointContainer& c) {
  const RunManifest& m = c.manifest;
  TensorIndex index(c.tensors);
  fusenet::TrainedPipeline p;
  try {
    p.config = fusenet::config_from_json(m.config);
    const json& model = m.model;
    p.mask = dataio::ModalityMask::parse(model.at("mask").get<std::string>());
    if (p.mask != p.config.effective_mask()) throw IntegrityError("checkpoint: model mask disagrees with config");
    p.audio_ae = ae_from(index, "audio_ae", model.at("audio_ae"));
    p.lyrics_ae = ae_from(index, "lyrics_ae", model.at("lyrics_ae"));
    const json& head = model.at("head");
    p.head = network_from(index, "head", layers_from_json(head.at("layers")), head.at("seed").get<std::uint64_t>());
    for (const json& e : head.at("history")) {
      p.head_history.push_back(
          {e.at(0).get<std::size_t>(), e.at(1).get<double>(), e.at(2).get<double>(), e.at(3).get<double>()});
    }
    p.head_best_epoch = head.at("best_epoch").get<std::size_t>();

    const json& layout = model.at("scalers");
    p.scalers.hl = minmax_from<dataio::MinMaxScaler>(index, layout, "hl", dataio::kHlAudioDim);
    p.scalers.ll = minmax_from<dataio::MinMaxScaler>(index, layout, "ll", dataio::kLlAudioDim);
    if (layout.at("lyr").get<bool>()) {
      const auto w = static_cast<std::uint32_t>(model.at("lyr_width").get<std::size_t>());
      dataio::Standardizer z;
      z.mean = index.get("scaler/lyr.mean", {w}).data;
      z.stddev = index.get("scaler/lyr.stddev", {w}).data;
      p.scalers.lyr = std::move(z);
    }
    p.scalers.meta = minmax_from<dataio::MinMaxScaler>(index, layout, "meta", dataio::kMetadataDim);
    p.scalers.stylo = minmax_from<dataio::MinMaxScaler>(index, layout, "stylo", dataio::kStyloDim);
  } catch (const json::exception& e) {
    throw IntegrityError(std::string("checkpoint: malformed model description: ") + e.what());
  } catch (const ShapeError& e) {
    throw IntegrityError(std::string("checkpoint: inconsistent network: ") + e.what());
  } catch (const UsageError& e) {
    throw IntegrityError(std::string("checkpoint: invalid model description: ") + e.what());
  }
  index.require_all_used();

  p.provenance.corpus_fingerprint = m.corpus_fingerprint;
  p.provenance.split_fingerprint = m.split_fingerprint;
  p.provenance.embedding_dim = m.embedding_dim;
  p.provenance.embedding_source = m.embedding_source;
  p.provenance.fold = m.fold;
  p.provenance.seeds = m.seeds;
  if (p.run_fingerprint() != m.run_fingerprint) throw IntegrityError("checkpoint: run fingerprint mismatch");
  return p;
}

void save_pipeline(const fusenet::TrainedPipeline& p, const std::filesystem::path& path) {
  save_checkpoint(to_container(p), path);
}

fusenet::TrainedPipeline load_pipeline(const std::filesystem::path& path, RunManifest* manifest) {
  CheckpointContainer c = load_checkpoint(path);
  fusenet::TrainedPipeline p = from_container(c);
  if (manifest) *manifest = std::move(c.manifest);
  return p;
}

}  // namespace lyricnet::cli
