#include "lyricnet/numcore/network.hpp"

#include <cmath>
#include <string>

#include "lyricnet/errors.hpp"

namespace lyricnet::numcore {

namespace {

std::string layer_tag(std::size_t l) { return "layer " + std::to_string(l); }

// 53-bit uniform in [0, 1) straight from the engine so dropout masks do not
// depend on the standard library's distribution implementation.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Matrix apply_layer(const Network& net, std::size_t l, const Matrix& input, Matrix* pre_out) {
  const LayerSpec& spec = net.layers()[l];
  if (input.cols() != spec.in_dim) {
    throw ShapeError(layer_tag(l) + ": input width " + std::to_string(input.cols()) + " but layer expects " +
                     std::to_string(spec.in_dim));
  }
  Matrix z = spec.tied_to ? matmul_bt(input, net.weight(*spec.tied_to)) : matmul(input, net.weight(l));
  add_row_broadcast(z, net.bias(l));
  if (pre_out != nullptr) {
    *pre_out = z;
  }
  apply_activation_inplace(z, spec.activation);
  return z;
}

}  // namespace

Network::Network(std::vector<LayerSpec> layers, std::uint64_t seed) : layers_(std::move(layers)), seed_(seed) {
  weights_.resize(layers_.size());
  biases_.resize(layers_.size());
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    biases_[l].assign(layers_[l].out_dim, 0.0f);
    if (!layers_[l].tied_to) weights_[l] = Matrix(layers_[l].in_dim, layers_[l].out_dim);
  }
  validate();

  std::mt19937_64 rng(seed);
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const LayerSpec& spec = layers_[l];
    if (spec.tied_to) continue;
    auto w = weights_[l].values();
    if (spec.activation == Activation::kSELU) {
      std::normal_distribution<double> dist(0.0, std::sqrt(1.0 / static_cast<double>(spec.in_dim)));
      for (float& v : w) v = static_cast<float>(dist(rng));
    } else {
      const double limit = std::sqrt(6.0 / static_cast<double>(spec.in_dim + spec.out_dim));
      std::uniform_real_distribution<double> dist(-limit, limit);
      for (float& v : w) v = static_cast<float>(dist(rng));
    }
  }
}

Network::Network(std::vector<LayerSpec> layers, std::vector<Matrix> weights, std::vector<std::vector<float>> biases,
                 std::uint64_t seed)
    : layers_(std::move(layers)), weights_(std::move(weights)), biases_(std::move(biases)), seed_(seed) {
  validate();
}

void Network::validate() const {
  if (layers_.empty()) throw ShapeError("network has no layers");
  if (weights_.size() != layers_.size() || biases_.size() != layers_.size()) {
    throw ShapeError("network storage does not match layer count");
  }
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const LayerSpec& s = layers_[l];
    if (s.in_dim == 0 || s.out_dim == 0) throw ShapeError(layer_tag(l) + ": zero dimension");
    if (l > 0 && layers_[l - 1].out_dim != s.in_dim) {
      throw ShapeError(layer_tag(l) + ": in_dim " + std::to_string(s.in_dim) + " does not follow previous out_dim " +
                       std::to_string(layers_[l - 1].out_dim));
    }
    if (biases_[l].size() != s.out_dim) throw ShapeError(layer_tag(l) + ": bias length mismatch");
    if (s.tied_to) {
      const std::size_t owner = *s.tied_to;
      if (owner >= layers_.size() || owner == l || layers_[owner].tied_to) {
        throw ShapeError(layer_tag(l) + ": tied_to must reference another untied layer");
      }
      if (layers_[owner].out_dim != s.in_dim || layers_[owner].in_dim != s.out_dim) {
        throw ShapeError(layer_tag(l) + ": tied layer shape is not the transpose of " + layer_tag(owner));
      }
      if (!weights_[l].empty()) throw ShapeError(layer_tag(l) + ": tied layer must not own weight storage");
    } else if (weights_[l].rows() != s.in_dim || weights_[l].cols() != s.out_dim) {
      throw ShapeError(layer_tag(l) + ": weight shape mismatch");
    }
  }
}

std::size_t Network::in_dim() const { return layers_.front().in_dim; }
std::size_t Network::out_dim() const { return layers_.back().out_dim; }

Matrix Network::effective_weight(std::size_t layer) const {
  const LayerSpec& s = layers_.at(layer);
  return s.tied_to ? weights_.at(*s.tied_to).transposed() : weights_.at(layer);
}

std::size_t Network::parameter_count() const {
  std::size_t n = 0;
  for (const LayerSpec& s : layers_) {
    if (!s.tied_to) n += s.in_dim * s.out_dim;
    n += s.out_dim;
  }
  return n;
}

std::vector<ParameterView> Network::parameters() const {
  std::vector<ParameterView> out;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const std::string prefix = "layer" + std::to_string(l);
    if (!layers_[l].tied_to) {
      out.push_back({prefix + ".weight", weights_[l].rows(), weights_[l].cols(), weights_[l].values()});
    }
    out.push_back({prefix + ".bias", 1, biases_[l].size(), biases_[l]});
  }
  return out;
}

Gradients Gradients::zeros_like(const Network& net) {
  Gradients g;
  g.weights.resize(net.layer_count());
  g.biases.resize(net.layer_count());
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    const LayerSpec& s = net.layers()[l];
    if (!s.tied_to) g.weights[l] = Matrix(s.in_dim, s.out_dim);
    g.biases[l].assign(s.out_dim, 0.0f);
  }
  return g;
}

Trace forward(const Network& net, const Matrix& batch, const ForwardOptions& options) {
  const std::size_t count = options.layer_limit.value_or(net.layer_count());
  if (count > net.layer_count()) throw ShapeError("forward: layer_limit exceeds layer count");
  const bool dropout = options.dropout_rate > 0.0f && options.rng != nullptr;
  if (dropout && options.dropout_rate >= 1.0f) throw UsageError("dropout rate must lie in [0, 1)");

  Trace trace;
  trace.activations.reserve(count + 1);
  trace.pre_activations.resize(count);
  trace.dropout_masks.resize(count);
  trace.activations.push_back(batch);
  for (std::size_t l = 0; l < count; ++l) {
    Matrix out = apply_layer(net, l, trace.activations.back(), &trace.pre_activations[l]);
    if (dropout && l + 1 < net.layer_count()) {
      const float keep_scale = 1.0f / (1.0f - options.dropout_rate);
      Matrix mask(out.rows(), out.cols());
      for (float& m : mask.values()) m = unit_uniform(*options.rng) < options.dropout_rate ? 0.0f : keep_scale;
      hadamard_inplace(out, mask);
      trace.dropout_masks[l] = std::move(mask);
    }
    trace.activations.push_back(std::move(out));
  }
  return trace;
}

Matrix predict(const Network& net, const Matrix& batch, std::optional<std::size_t> layer_limit) {
  return forward_range(net, batch, 0, layer_limit.value_or(net.layer_count()));
}

Matrix forward_range(const Network& net, const Matrix& input, std::size_t first, std::size_t count) {
  if (first + count > net.layer_count()) throw ShapeError("forward_range: layer range out of bounds");
  Matrix x = input;
  for (std::size_t l = first; l < first + count; ++l) x = apply_layer(net, l, x, nullptr);
  return x;
}

Gradients backward(const Network& net, const Trace& trace, const Matrix& output_gradient) {
  const std::size_t L = net.layer_count();
  if (trace.pre_activations.size() != L || trace.activations.size() != L + 1 || trace.dropout_masks.size() != L) {
    throw ShapeError("backward: trace does not cover all " + std::to_string(L) + " layers");
  }
  for (std::size_t l = 0; l < L; ++l) {
    const LayerSpec& s = net.layers()[l];
    if (trace.activations[l].cols() != s.in_dim || trace.pre_activations[l].cols() != s.out_dim) {
      throw ShapeError("backward: stale trace at " + layer_tag(l));
    }
  }
  const Matrix& out = trace.output();
  if (output_gradient.rows() != out.rows() || output_gradient.cols() != out.cols()) {
    throw ShapeError("backward: output gradient shape does not match network output");
  }

  Gradients grads = Gradients::zeros_like(net);
  Matrix upstream = output_gradient;
  for (std::size_t li = L; li-- > 0;) {
    const LayerSpec& s = net.layers()[li];
    if (!trace.dropout_masks[li].empty()) hadamard_inplace(upstream, trace.dropout_masks[li]);

    Matrix delta = apply_activation(trace.pre_activations[li], s.activation, ActivationMode::kDerivative);
    hadamard_inplace(delta, upstream);

    Matrix dw = matmul_at(trace.activations[li], delta);
    grads.biases[li] = column_sums(delta);
    if (s.tied_to) {
      // d(W_eᵀ) contributes its transpose to the owner.
      Matrix& owner = grads.weights[*s.tied_to];
      axpy_inplace(owner, 1.0f, dw.transposed());
    } else {
      axpy_inplace(grads.weights[li], 1.0f, dw);
    }

    if (li > 0) {
      upstream = s.tied_to ? matmul(delta, net.weight(*s.tied_to)) : matmul_bt(delta, net.weight(li));
    }
  }
  return grads;
}

}  // namespace lyricnet::numcore
