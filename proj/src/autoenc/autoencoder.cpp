#include "lyricnet/autoenc/autoencoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "lyricnet/errors.hpp"
#include "lyricnet/hashing.hpp"
#include "lyricnet/numcore/adam.hpp"

namespace lyricnet::autoenc {

namespace {

std::string join_dims(const std::vector<std::size_t>& dims) {
  std::string out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(dims[i]);
  }
  return out;
}

std::string fingerprint_of(const AutoencoderSpec& spec, const AeTrainConfig& c) {
  std::ostringstream s;
  s.precision(17);
  s << "in=" << spec.input_dim << ";enc=" << join_dims(spec.encoder_dims) << ";bottleneck=" << spec.bottleneck_dim
    << ";act=" << numcore::to_string(spec.activation) << ";out=" << numcore::to_string(spec.output_activation)
    << ";tied=" << spec.tied << ";loss=" << spec.loss.to_string() << ";epochs=" << c.epochs
    << ";lr=" << c.learning_rate << ";batch=" << c.batch_size << ";seed=" << c.seed << ";val=" << c.val_fraction
    << ";patience=" << c.patience;
  return to_hex(sha256(s.str()));
}

double eval_loss(const Network& net, const ReconstructionLoss& loss, const Matrix& x) {
  if (x.rows() == 0) return 0.0;
  return reconstruction_loss(loss, numcore::predict(net, x), x).value;
}

}  // namespace

std::string ReconstructionLoss::to_string() const {
  if (kind == Kind::kMse) return "mse";
  std::ostringstream s;
  s.precision(17);
  s << "directional(" << alpha1 << "," << alpha2 << ")";
  return s.str();
}

ReconstructionLoss ReconstructionLoss::parse(const std::string& text) {
  if (text == "mse") return mse();
  if (text == "directional") return directional();
  double a1 = 0.0, a2 = 0.0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "directional(%lf,%lf%c", &a1, &a2, &tail) == 3 && tail == ')') {
    if (a1 < 0.0 || a2 < 0.0) throw UsageError("directional loss weights must be non-negative: " + text);
    return directional(a1, a2);
  }
  throw UsageError("unknown reconstruction loss '" + text + "' (expected mse|directional|directional(a1,a2))");
}

numcore::LossResult reconstruction_loss(const ReconstructionLoss& loss, const Matrix& pred, const Matrix& target) {
  if (loss.kind == ReconstructionLoss::Kind::kMse) return numcore::mse_loss(pred, target);
  return numcore::directional_loss(pred, target, loss.alpha1, loss.alpha2);
}

std::vector<std::size_t> AutoencoderSpec::decoder_dims() const {
  std::vector<std::size_t> dims(encoder_dims.rbegin(), encoder_dims.rend());
  dims.push_back(input_dim);
  return dims;
}

void AutoencoderSpec::validate() const {
  if (encoder_dims.empty()) throw UsageError("autoencoder: no encoder layers");
  std::size_t prev = input_dim;
  for (std::size_t d : encoder_dims) {
    if (d == 0 || d >= prev) {
      throw UsageError("autoencoder: encoder dims must be strictly decreasing from input " + std::to_string(input_dim) +
                       " (got " + join_dims(encoder_dims) + ")");
    }
    prev = d;
  }
  if (bottleneck_dim == 0 || bottleneck_dim >= prev) {
    throw UsageError("autoencoder: bottleneck " + std::to_string(bottleneck_dim) + " must be below last encoder dim " +
                     std::to_string(prev));
  }
}

std::vector<numcore::LayerSpec> AutoencoderSpec::layer_specs() const {
  validate();
  std::vector<std::size_t> chain{input_dim};
  chain.insert(chain.end(), encoder_dims.begin(), encoder_dims.end());
  chain.push_back(bottleneck_dim);
  const std::size_t n_enc = chain.size() - 1;

  std::vector<numcore::LayerSpec> layers;
  for (std::size_t i = 0; i < n_enc; ++i) layers.push_back({chain[i], chain[i + 1], activation, std::nullopt});
  for (std::size_t j = 0; j < n_enc; ++j) {
    const std::size_t owner = n_enc - 1 - j;
    numcore::LayerSpec l{chain[owner + 1], chain[owner], j + 1 == n_enc ? output_activation : activation, std::nullopt};
    if (tied) l.tied_to = owner;
    layers.push_back(l);
  }
  return layers;
}

AutoencoderSpec build_audio_ae(std::size_t d) {
  if (d < 6) throw UsageError("audio autoencoder needs input dim >= 6, got " + std::to_string(d));
  AutoencoderSpec spec;
  spec.input_dim = d;
  spec.encoder_dims = {d / 2, d / 3};
  spec.bottleneck_dim = d / 5;
  spec.activation = Activation::kReLU;
  spec.output_activation = Activation::kSigmoid;
  spec.tied = false;
  spec.loss = ReconstructionLoss::mse();
  spec.validate();
  return spec;
}

AutoencoderSpec build_lyrics_ae(std::size_t d, std::size_t divisor, Activation activation, ReconstructionLoss loss) {
  if (divisor != 12 && divisor != 16) {
    throw UsageError("lyrics bottleneck divisor must be 12 or 16, got " + std::to_string(divisor));
  }
  if (d < 32) throw UsageError("lyrics autoencoder needs input dim >= 32, got " + std::to_string(d));
  AutoencoderSpec spec;
  spec.input_dim = d;
  spec.encoder_dims = {d / 2, d / 4, d / 8};
  spec.bottleneck_dim = d / divisor;
  spec.activation = activation;
  spec.output_activation = Activation::kIdentity;
  spec.tied = true;
  spec.loss = loss;
  spec.validate();
  return spec;
}

Network init_autoencoder(const AutoencoderSpec& spec, std::uint64_t seed) {
  return Network(spec.layer_specs(), derive_seed(seed, "init"));
}

TrainedAutoencoder train_autoencoder(const AutoencoderSpec& spec, const Matrix& features, const AeTrainConfig& config) {
  if (features.cols() != spec.input_dim) {
    throw ShapeError("train_autoencoder: feature width " + std::to_string(features.cols()) + " != input dim " +
                     std::to_string(spec.input_dim));
  }
  if (config.batch_size == 0) throw UsageError("train_autoencoder: batch size must be positive");
  if (config.val_fraction < 0.0 || config.val_fraction >= 1.0) {
    throw UsageError("train_autoencoder: val_fraction must lie in [0, 1)");
  }
  if (!numcore::all_finite(features)) throw DataError("train_autoencoder: non-finite input feature");
  if (spec.output_activation == Activation::kSigmoid) {
    for (float v : features.values()) {
      if (v < 0.0f || v > 1.0f) {
        throw DataError("train_autoencoder: Sigmoid-output autoencoder needs inputs in [0, 1], found " +
                        std::to_string(v));
      }
    }
  }

  TrainedAutoencoder out;
  out.spec = spec;
  out.train_fingerprint = fingerprint_of(spec, config);
  out.params = init_autoencoder(spec, config.seed);

  const std::size_t n = features.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 split_rng(derive_seed(config.seed, "val_split"));
  std::shuffle(order.begin(), order.end(), split_rng);
  std::size_t n_val = static_cast<std::size_t>(std::floor(static_cast<double>(n) * config.val_fraction));
  if (n_val >= n) n_val = n > 0 ? n - 1 : 0;
  std::vector<std::size_t> val_idx(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_val));
  std::vector<std::size_t> train_idx(order.begin() + static_cast<std::ptrdiff_t>(n_val), order.end());
  std::sort(val_idx.begin(), val_idx.end());
  std::sort(train_idx.begin(), train_idx.end());
  const Matrix train = numcore::select_rows(features, train_idx);
  // Without a held-out slice the validation loss tracks the training set.
  const Matrix val = n_val > 0 ? numcore::select_rows(features, val_idx) : train;

  const double train0 = eval_loss(out.params, spec.loss, train);
  out.history.push_back({0, train0, n_val > 0 ? eval_loss(out.params, spec.loss, val) : train0});

  numcore::AdamState adam(out.params, {config.learning_rate});
  std::mt19937_64 shuffle_rng(derive_seed(config.seed, "shuffle"));
  std::vector<std::size_t> perm(train.rows());
  std::iota(perm.begin(), perm.end(), 0);

  double best_val = out.history[0].val_loss;
  Network best = out.params;
  std::size_t since_best = 0;

  for (std::size_t epoch = 1; epoch <= config.epochs && train.rows() > 0; ++epoch) {
    std::shuffle(perm.begin(), perm.end(), shuffle_rng);
    double weighted = 0.0;
    std::size_t batch_no = 0;
    for (std::size_t start = 0; start < perm.size(); start += config.batch_size, ++batch_no) {
      const std::size_t stop = std::min(perm.size(), start + config.batch_size);
      const std::span<const std::size_t> idx(perm.data() + start, stop - start);
      const Matrix batch = numcore::select_rows(train, idx);
      const numcore::Trace trace = numcore::forward(out.params, batch);
      const numcore::LossResult loss = reconstruction_loss(spec.loss, trace.output(), batch);
      if (!std::isfinite(loss.value)) {
        throw DivergenceError("autoencoder: non-finite loss at epoch " + std::to_string(epoch) + " batch " +
                              std::to_string(batch_no));
      }
      const numcore::Gradients grads = numcore::backward(out.params, trace, loss.gradient);
      try {
        numcore::adam_step(out.params, grads, adam);
      } catch (const DivergenceError& e) {
        throw DivergenceError("autoencoder: epoch " + std::to_string(epoch) + " batch " + std::to_string(batch_no) +
                              ": " + e.what());
      }
      weighted += loss.value * static_cast<double>(idx.size());
    }
    const double train_loss = weighted / static_cast<double>(train.rows());
    const double val_loss = n_val > 0 ? eval_loss(out.params, spec.loss, val) : train_loss;
    if (!std::isfinite(val_loss)) {
      throw DivergenceError("autoencoder: non-finite validation loss at epoch " + std::to_string(epoch));
    }
    out.history.push_back({epoch, train_loss, val_loss});

    if (val_loss < best_val) {
      best_val = val_loss;
      out.best_epoch = epoch;
      since_best = 0;
      if (config.patience > 0) best = out.params;
    } else if (config.patience > 0 && ++since_best >= config.patience) {
      break;
    }
  }

  if (config.patience > 0) {
    out.params = std::move(best);
  } else {
    out.best_epoch = out.history.back().epoch;
  }
  return out;
}

Matrix encode(const TrainedAutoencoder& ae, const Matrix& x) {
  if (x.cols() != ae.spec.input_dim) {
    throw ShapeError("encode: width " + std::to_string(x.cols()) + " != input dim " + std::to_string(ae.spec.input_dim));
  }
  return numcore::predict(ae.params, x, ae.spec.encoder_layer_count());
}

Matrix decode(const TrainedAutoencoder& ae, const Matrix& code) {
  if (code.cols() != ae.spec.bottleneck_dim) {
    throw ShapeError("decode: width " + std::to_string(code.cols()) + " != bottleneck " +
                     std::to_string(ae.spec.bottleneck_dim));
  }
  const std::size_t n_enc = ae.spec.encoder_layer_count();
  return numcore::forward_range(ae.params, code, n_enc, ae.params.layer_count() - n_enc);
}

Matrix reconstruct(const TrainedAutoencoder& ae, const Matrix& x) {
  if (x.cols() != ae.spec.input_dim) {
    throw ShapeError("reconstruct: width " + std::to_string(x.cols()) + " != input dim " +
                     std::to_string(ae.spec.input_dim));
  }
  return numcore::predict(ae.params, x);
}

std::string history_csv(const std::vector<EpochLoss>& history) {
  std::ostringstream s;
  s.precision(9);
  s << "epoch,train_loss,val_loss\n";
  for (const EpochLoss& e : history) s << e.epoch << ',' << e.train_loss << ',' << e.val_loss << '\n';
  return s.str();
}

}  // namespace lyricnet::autoenc
