#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "lyricnet/numcore/activation.hpp"
#include "lyricnet/numcore/matrix.hpp"

namespace lyricnet::numcore {

struct LayerSpec {
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  Activation activation = Activation::kIdentity;
  // Decoder layer reusing the transposed weight of an earlier layer.
  std::optional<std::size_t> tied_to;

  bool operator==(const LayerSpec&) const = default;
};

// Named view on one trainable tensor. Enumeration order is the
// serialization contract: layer index ascending, weight before bias, tied
// layers contribute their bias only.
struct ParameterView {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::span<const float> values;
};

// Weights of a fixed-topology MLP. Layer l computes
//   out = act(in · W_l + b_l),  W_l of shape (in_dim × out_dim).
// A tied layer t with tied_to = e computes with W_eᵀ and stores no weight.
class Network {
 public:
  Network() = default;

  // Validates the topology and initializes weights from `seed`:
  // uniform ±sqrt(6/(in+out)) by default, normal(0, sqrt(1/in)) for SELU.
  Network(std::vector<LayerSpec> layers, std::uint64_t seed);

  // Rebuilds from stored tensors (checkpoint load). Tied layers must carry
  // an empty weight matrix.
  Network(std::vector<LayerSpec> layers, std::vector<Matrix> weights, std::vector<std::vector<float>> biases,
          std::uint64_t seed);

  const std::vector<LayerSpec>& layers() const noexcept { return layers_; }
  std::size_t layer_count() const noexcept { return layers_.size(); }
  std::size_t in_dim() const;
  std::size_t out_dim() const;
  std::uint64_t seed() const noexcept { return seed_; }
  bool is_tied(std::size_t layer) const { return layers_.at(layer).tied_to.has_value(); }

  // Stored weight; empty for tied layers.
  const Matrix& weight(std::size_t layer) const { return weights_.at(layer); }
  Matrix& mutable_weight(std::size_t layer) { return weights_.at(layer); }
  // Weight the layer actually multiplies by (transposed owner for tied layers).
  Matrix effective_weight(std::size_t layer) const;
  const std::vector<float>& bias(std::size_t layer) const { return biases_.at(layer); }
  std::vector<float>& mutable_bias(std::size_t layer) { return biases_.at(layer); }

  std::size_t parameter_count() const;
  std::vector<ParameterView> parameters() const;

  bool operator==(const Network&) const = default;

 private:
  void validate() const;

  std::vector<LayerSpec> layers_;
  std::vector<Matrix> weights_;
  std::vector<std::vector<float>> biases_;
  std::uint64_t seed_ = 0;
};

// Gradient tensors mirroring Network storage (empty weight for tied layers).
struct Gradients {
  std::vector<Matrix> weights;
  std::vector<std::vector<float>> biases;

  static Gradients zeros_like(const Network& net);
};

struct ForwardOptions {
  // Inverted dropout after every hidden activation. Active only when
  // rate > 0 and an rng is supplied (training mode).
  float dropout_rate = 0.0f;
  std::mt19937_64* rng = nullptr;
  // Evaluate only the first `layer_limit` layers (e.g. an encoder prefix).
  std::optional<std::size_t> layer_limit;
};

// activations[0] is the batch, activations[l+1] the (post-dropout) output
// of layer l. dropout_masks[l] holds 0 or 1/(1-p) scale factors, empty when
// dropout was not applied to that layer.
struct Trace {
  std::vector<Matrix> activations;
  std::vector<Matrix> pre_activations;
  std::vector<Matrix> dropout_masks;

  const Matrix& output() const { return activations.back(); }
};

Trace forward(const Network& net, const Matrix& batch, const ForwardOptions& options = {});

// Eval-mode forward that keeps only the final output.
Matrix predict(const Network& net, const Matrix& batch, std::optional<std::size_t> layer_limit = std::nullopt);

// Runs layers [first, first+count) on `input`, eval mode.
Matrix forward_range(const Network& net, const Matrix& input, std::size_t first, std::size_t count);

// Backpropagates dLoss/dOutput through a trace produced by forward() on
// the same network. Tied layers add their weight gradient (transposed) into
// the owning layer's gradient.
Gradients backward(const Network& net, const Trace& trace, const Matrix& output_gradient);

}  // namespace lyricnet::numcore
