#pragma once

#include <cstdint>

#include "lyricnet/numcore/network.hpp"

namespace lyricnet::numcore {

struct AdamHyperParams {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// First/second moment estimates shaped like the network's trainable tensors.
class AdamState {
 public:
  AdamState() = default;
  AdamState(const Network& net, AdamHyperParams hyper);

  std::uint64_t step() const noexcept { return step_; }
  const AdamHyperParams& hyper() const noexcept { return hyper_; }
  const Gradients& first_moment() const noexcept { return m_; }
  const Gradients& second_moment() const noexcept { return v_; }

 private:
  friend void adam_step(Network& net, const Gradients& grads, AdamState& state);

  std::uint64_t step_ = 0;
  AdamHyperParams hyper_;
  Gradients m_;
  Gradients v_;
};

// Bias-corrected Adam update. Every gradient is checked before any
// parameter moves; a non-finite entry throws DivergenceError naming the
// tensor and leaves both params and state untouched.
void adam_step(Network& net, const Gradients& grads, AdamState& state);

}  // namespace lyricnet::numcore
