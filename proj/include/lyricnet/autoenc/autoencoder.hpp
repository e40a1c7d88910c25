#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lyricnet/numcore/activation.hpp"
#include "lyricnet/numcore/loss.hpp"
#include "lyricnet/numcore/matrix.hpp"
#include "lyricnet/numcore/network.hpp"

namespace lyricnet::autoenc {

using numcore::Activation;
using numcore::Matrix;
using numcore::Network;

// Coefficients of the directional reconstruction loss used for lyric
// embeddings: 0.5 * MSE + 0.1 * cosine distance.
inline constexpr double kDirectionalAlpha1 = 0.5;
inline constexpr double kDirectionalAlpha2 = 0.5 / 5.0;

struct ReconstructionLoss {
  enum class Kind { kMse, kDirectional };
  Kind kind = Kind::kMse;
  double alpha1 = 1.0;
  double alpha2 = 0.0;

  static ReconstructionLoss mse() { return {}; }
  static ReconstructionLoss directional(double a1 = kDirectionalAlpha1, double a2 = kDirectionalAlpha2) {
    return {Kind::kDirectional, a1, a2};
  }
  // "mse" or "directional(a1,a2)"
  std::string to_string() const;
  static ReconstructionLoss parse(const std::string& text);

  bool operator==(const ReconstructionLoss&) const = default;
};

numcore::LossResult reconstruction_loss(const ReconstructionLoss& loss, const Matrix& pred, const Matrix& target);

struct AutoencoderSpec {
  std::size_t input_dim = 0;
  std::vector<std::size_t> encoder_dims;  // strictly decreasing
  std::size_t bottleneck_dim = 0;
  Activation activation = Activation::kReLU;
  Activation output_activation = Activation::kSigmoid;
  bool tied = false;
  ReconstructionLoss loss;

  // Encoder layers input -> encoder_dims... -> bottleneck, then the mirrored
  // decoder. Tied decoder layers reference their encoder counterpart.
  std::vector<numcore::LayerSpec> layer_specs() const;
  std::size_t encoder_layer_count() const { return encoder_dims.size() + 1; }
  std::vector<std::size_t> decoder_dims() const;
  void validate() const;

  bool operator==(const AutoencoderSpec&) const = default;
};

// Untied ReLU autoencoder for low-level audio: encoder [d/2, d/3],
// bottleneck d/5 (floor division), Sigmoid reconstruction, MSE loss.
AutoencoderSpec build_audio_ae(std::size_t input_dim);

// Tied-weights autoencoder for lyric embeddings: encoder [d/2, d/4, d/8],
// bottleneck d/divisor (12 or 16), Identity reconstruction.
AutoencoderSpec build_lyrics_ae(std::size_t input_dim, std::size_t bottleneck_divisor = 16,
                                Activation activation = Activation::kSELU,
                                ReconstructionLoss loss = ReconstructionLoss::mse());

struct AeTrainConfig {
  std::size_t epochs = 100;
  double learning_rate = 1e-3;
  std::size_t batch_size = 128;
  std::uint64_t seed = 0;
  double val_fraction = 0.1;
  // Stop after this many epochs without val improvement and restore the best
  // parameters; 0 disables early stopping.
  std::size_t patience = 10;
};

struct EpochLoss {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double val_loss = 0.0;

  bool operator==(const EpochLoss&) const = default;
};

struct TrainedAutoencoder {
  AutoencoderSpec spec;
  Network params;
  // Entry 0 holds the losses of the initial parameters.
  std::vector<EpochLoss> history;
  std::size_t best_epoch = 0;
  std::string train_fingerprint;

  double final_val_loss() const { return history.at(best_epoch).val_loss; }
  bool operator==(const TrainedAutoencoder&) const = default;
};

Network init_autoencoder(const AutoencoderSpec& spec, std::uint64_t seed);

TrainedAutoencoder train_autoencoder(const AutoencoderSpec& spec, const Matrix& features, const AeTrainConfig& config);

// Bottleneck activations (n x bottleneck_dim).
Matrix encode(const TrainedAutoencoder& ae, const Matrix& x);
Matrix decode(const TrainedAutoencoder& ae, const Matrix& code);
Matrix reconstruct(const TrainedAutoencoder& ae, const Matrix& x);

// "epoch,train_loss,val_loss" rows.
std::string history_csv(const std::vector<EpochLoss>& history);

}  // namespace lyricnet::autoenc
