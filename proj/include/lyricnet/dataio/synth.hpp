#pragma once

#include <cstdint>

#include "lyricnet/dataio/track.hpp"

namespace lyricnet::dataio {

// Weight of each modality's latent contribution to popularity.
struct PlantedSignal {
  double hh = 0.35;
  double ll = 0.5;
  double lr = 0.6;
  double m = 1.0;
};

struct SynthOptions {
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::uint32_t embedding_dim = 128;
  PlantedSignal signal;
  // Std of the additive label noise, in units of a single modality's
  // (unit-variance) contribution.
  double noise = 0.3;
  double label_mean = 41.11;
  double label_std = 17.51;
  std::size_t latent_rank = 6;  // latent factors behind the LL and LR blocks
};

// Deterministic synthetic corpus. Each modality m has latent factors u_m
// (standard normal) rendered into its feature block, and contributes
//   c_m = (a_m · u_m + 0.5 u_m0 u_m1) / sqrt(1.25),   |a_m| = 1,
// a zero-mean unit-variance term. Popularity is
//   round(label_mean + label_std * (Σ w_m c_m + noise ε) / sqrt(Σ w_m² + noise²))
// clamped to [0, 100]. Every record passes clean_corpus.
Corpus synth_dataset(const SynthOptions& options);

// Std of the label noise on the normalized [0, 1] scale.
double normalized_noise_std(const SynthOptions& options);

}  // namespace lyricnet::dataio
