#pragma once

#include <cstdint>
#include <vector>

#include "lyricnet/autoenc/autoencoder.hpp"
#include "lyricnet/numcore/network.hpp"

namespace lyricnet::fusenet {

using numcore::LayerSpec;
using numcore::Network;

// Fusion regressor: hidden widths [d, d/2, d/3] with ReLU, then one Sigmoid
// unit. Widths below min_width are raised to it.
std::vector<LayerSpec> fusenet_layers(std::size_t input_dim, std::size_t min_width = 1);
Network build_fusenet(std::size_t input_dim, std::uint64_t seed, std::size_t min_width = 1);

// Baseline: one untied autoencoder over the concatenated feature vector and
// a regression head [b, b/2, b/4] + Sigmoid unit on its bottleneck b = d/5.
struct BaselineSpec {
  autoenc::AutoencoderSpec autoencoder;
  std::vector<LayerSpec> head;
};

BaselineSpec build_baseline(std::size_t d_total);
std::vector<LayerSpec> baseline_head_layers(std::size_t bottleneck_dim);

}  // namespace lyricnet::fusenet
