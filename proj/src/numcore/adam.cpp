#include "lyricnet/numcore/adam.hpp"

#include <cmath>
#include <string>

#include "lyricnet/errors.hpp"

namespace lyricnet::numcore {

namespace {

struct StepConstants {
  double lr, b1, b2, eps, bc1, bc2;
};

void update(std::span<float> param, std::span<const float> grad, std::span<float> m, std::span<float> v,
            const StepConstants& k) {
  for (std::size_t i = 0; i < param.size(); ++i) {
    const double g = grad[i];
    const double mi = k.b1 * m[i] + (1.0 - k.b1) * g;
    const double vi = k.b2 * v[i] + (1.0 - k.b2) * g * g;
    m[i] = static_cast<float>(mi);
    v[i] = static_cast<float>(vi);
    const double mhat = mi / k.bc1;
    const double vhat = vi / k.bc2;
    param[i] = static_cast<float>(param[i] - k.lr * mhat / (std::sqrt(vhat) + k.eps));
  }
}

}  // namespace

AdamState::AdamState(const Network& net, AdamHyperParams hyper)
    : hyper_(hyper), m_(Gradients::zeros_like(net)), v_(Gradients::zeros_like(net)) {
  if (!(hyper_.learning_rate > 0.0)) throw UsageError("adam: learning rate must be positive");
}

void adam_step(Network& net, const Gradients& grads, AdamState& state) {
  const std::size_t L = net.layer_count();
  if (grads.weights.size() != L || grads.biases.size() != L || state.m_.weights.size() != L) {
    throw ShapeError("adam_step: gradient/state layout does not match network");
  }
  for (std::size_t l = 0; l < L; ++l) {
    const Matrix& w = net.weight(l);
    if (grads.weights[l].rows() != w.rows() || grads.weights[l].cols() != w.cols() ||
        grads.biases[l].size() != net.bias(l).size()) {
      throw ShapeError("adam_step: gradient shape mismatch at layer " + std::to_string(l));
    }
    if (!all_finite(grads.weights[l])) {
      throw DivergenceError("adam_step: non-finite gradient in layer" + std::to_string(l) + ".weight");
    }
    if (!all_finite(grads.biases[l])) {
      throw DivergenceError("adam_step: non-finite gradient in layer" + std::to_string(l) + ".bias");
    }
  }

  state.step_ += 1;
  const AdamHyperParams& h = state.hyper_;
  const double t = static_cast<double>(state.step_);
  const StepConstants k{h.learning_rate, h.beta1, h.beta2, h.epsilon, 1.0 - std::pow(h.beta1, t),
                        1.0 - std::pow(h.beta2, t)};
  for (std::size_t l = 0; l < L; ++l) {
    if (!net.is_tied(l)) {
      update(net.mutable_weight(l).values(), grads.weights[l].values(), state.m_.weights[l].values(),
             state.v_.weights[l].values(), k);
    }
    update(net.mutable_bias(l), grads.biases[l], state.m_.biases[l], state.v_.biases[l], k);
  }
}

}  // namespace lyricnet::numcore
