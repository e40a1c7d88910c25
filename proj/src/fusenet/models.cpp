#include "lyricnet/fusenet/models.hpp"

#include <algorithm>
#include <string>

#include "lyricnet/errors.hpp"

namespace lyricnet::fusenet {

using numcore::Activation;

std::vector<LayerSpec> fusenet_layers(std::size_t d, std::size_t min_width) {
  if (d < 3) throw UsageError("fusion net needs input dim >= 3, got " + std::to_string(d));
  if (min_width == 0) throw UsageError("fusion net min_width must be positive");
  const std::size_t h1 = std::max(min_width, d), h2 = std::max(min_width, d / 2), h3 = std::max(min_width, d / 3);
  return {
      {d, h1, Activation::kReLU, std::nullopt},
      {h1, h2, Activation::kReLU, std::nullopt},
      {h2, h3, Activation::kReLU, std::nullopt},
      {h3, 1, Activation::kSigmoid, std::nullopt},
  };
}

Network build_fusenet(std::size_t input_dim, std::uint64_t seed, std::size_t min_width) {
  return Network(fusenet_layers(input_dim, min_width), seed);
}

std::vector<LayerSpec> baseline_head_layers(std::size_t b) {
  if (b < 4) throw UsageError("baseline head needs bottleneck >= 4, got " + std::to_string(b));
  return {
      {b, b, Activation::kReLU, std::nullopt},
      {b, b / 2, Activation::kReLU, std::nullopt},
      {b / 2, b / 4, Activation::kReLU, std::nullopt},
      {b / 4, 1, Activation::kSigmoid, std::nullopt},
  };
}

BaselineSpec build_baseline(std::size_t d_total) {
  BaselineSpec spec;
  spec.autoencoder = autoenc::build_audio_ae(d_total);
  spec.head = baseline_head_layers(spec.autoencoder.bottleneck_dim);
  return spec;
}

}  // namespace lyricnet::fusenet
