#include "lyricnet/dataio/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>

#include "lyricnet/dataio/cleaning.hpp"
#include "lyricnet/errors.hpp"
#include "lyricnet/numcore/activation.hpp"

namespace lyricnet::dataio {

namespace {

// Rough centre/spread per high-level descriptor so the raw block looks like
// the real one before min-max scaling.
constexpr std::array<double, kHlAudioDim> kHlCenter = {0.6, 0.65, 5.0, -7.0, 0.6, 0.1, 0.25,
                                                       0.05, 0.18, 0.5, 120.0, 210000.0, 4.0};
constexpr std::array<double, kHlAudioDim> kHlSpread = {0.15, 0.18, 3.0, 3.0, 0.3, 0.08, 0.2,
                                                       0.1, 0.12, 0.22, 25.0, 45000.0, 0.4};

constexpr std::array<const char*, 5> kLanguages = {"en", "es", "pt", "fr", "de"};
constexpr std::array<double, 5> kLanguageShare = {0.69, 0.14, 0.08, 0.05, 0.04};

struct Contribution {
  std::vector<double> direction;  // unit-norm a_m

  double operator()(std::span<const double> u) const {
    double lin = 0.0;
    for (std::size_t j = 0; j < direction.size(); ++j) lin += direction[j] * u[j];
    return (lin + 0.5 * u[0] * u[1]) / std::sqrt(1.25);
  }
};

Contribution random_direction(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Contribution c;
  c.direction.resize(dim);
  double norm = 0.0;
  for (double& a : c.direction) {
    a = normal(rng);
    norm += a * a;
  }
  norm = std::sqrt(norm);
  for (double& a : c.direction) a /= norm;
  return c;
}

std::vector<double> random_matrix(std::size_t rows, std::size_t cols, double scale, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, scale);
  std::vector<double> m(rows * cols);
  for (double& v : m) v = normal(rng);
  return m;
}

}  // namespace

double normalized_noise_std(const SynthOptions& o) {
  const PlantedSignal& s = o.signal;
  const double total = s.hh * s.hh + s.ll * s.ll + s.lr * s.lr + s.m * s.m + o.noise * o.noise;
  if (total == 0.0) return 0.0;
  return o.label_std / 100.0 * o.noise / std::sqrt(total);
}

Corpus synth_dataset(const SynthOptions& o) {
  if (o.n == 0) throw UsageError("synth_dataset: n must be positive");
  if (o.latent_rank < 2) throw UsageError("synth_dataset: latent_rank must be at least 2");
  if (o.embedding_dim < o.latent_rank) throw UsageError("synth_dataset: embedding_dim smaller than latent rank");

  std::mt19937_64 rng(o.seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;

  const std::size_t r = o.latent_rank;
  const Contribution c_hh = random_direction(kHlAudioDim, rng);
  const Contribution c_ll = random_direction(r, rng);
  const Contribution c_lr = random_direction(r, rng);
  // Artist popularity carries most of the metadata signal.
  const double m_norm = std::sqrt(0.35 * 0.35 + 0.9 * 0.9 + 0.25 * 0.25);
  const Contribution c_m{{0.35 / m_norm, 0.9 / m_norm, 0.25 / m_norm}};
  const auto ll_mix = random_matrix(kLlAudioDim, r, 1.0 / std::sqrt(static_cast<double>(r)), rng);
  const auto ll_offset = random_matrix(kLlAudioDim, 1, 0.5, rng);
  const auto lr_mix = random_matrix(o.embedding_dim, r, 1.0 / std::sqrt(static_cast<double>(r)), rng);

  const PlantedSignal& w = o.signal;
  const double total_sd = std::sqrt(w.hh * w.hh + w.ll * w.ll + w.lr * w.lr + w.m * w.m + o.noise * o.noise);

  Corpus corpus;
  corpus.header.embedding_dim = o.embedding_dim;
  corpus.header.embedding_source = "synthetic-latent-r" + std::to_string(r);
  corpus.records.reserve(o.n);

  std::vector<double> u_hh(kHlAudioDim), u_ll(r), u_lr(r), u_m(kMetadataDim);
  for (std::size_t i = 0; i < o.n; ++i) {
    TrackRecord rec;
    char id[32];
    std::snprintf(id, sizeof(id), "trk%07zu", i);
    rec.track_id = id;
    rec.lyrics_char_count = static_cast<std::uint32_t>(kMinLyricsChars + unit(rng) * 6900.0);

    const double lang_draw = unit(rng);
    double acc = 0.0;
    rec.language = kLanguages.back();
    for (std::size_t l = 0; l < kLanguages.size(); ++l) {
      acc += kLanguageShare[l];
      if (lang_draw < acc) {
        rec.language = kLanguages[l];
        break;
      }
    }
    rec.release_year = static_cast<std::int32_t>(std::max(1950.0, 2019.0 - std::floor(std::abs(normal(rng)) * 12.0)));

    for (double& u : u_hh) u = normal(rng);
    for (double& u : u_ll) u = normal(rng);
    for (double& u : u_lr) u = normal(rng);
    for (double& u : u_m) u = normal(rng);

    for (std::size_t j = 0; j < kHlAudioDim; ++j) rec.hl_audio[j] = static_cast<float>(kHlCenter[j] + kHlSpread[j] * u_hh[j]);

    for (std::size_t d = 0; d < kLlAudioDim; ++d) {
      double z = ll_offset[d];
      for (std::size_t j = 0; j < r; ++j) z += ll_mix[d * r + j] * u_ll[j];
      rec.ll_audio[d] = static_cast<float>(numcore::sigmoid(z) + 0.01 * normal(rng));
    }

    std::vector<float> emb(o.embedding_dim);
    for (std::size_t d = 0; d < o.embedding_dim; ++d) {
      double z = 0.0;
      for (std::size_t j = 0; j < r; ++j) z += lr_mix[d * r + j] * u_lr[j];
      emb[d] = static_cast<float>(z + 0.05 * normal(rng));
    }
    rec.lyric_embedding = std::move(emb);

    rec.metadata[kArtistFollowers] = static_cast<float>(std::round(50000.0 * std::exp(0.35 * u_m[0])));
    rec.metadata[kArtistPopularity] = static_cast<float>(std::clamp(50.0 + 15.0 * u_m[1], 0.0, 100.0));
    rec.metadata[kAvailableMarkets] = static_cast<float>(std::clamp(std::round(80.0 + 25.0 * u_m[2]), 1.0, 185.0));

    const double y = w.hh * c_hh(u_hh) + w.ll * c_ll(u_ll) + w.lr * c_lr(u_lr) + w.m * c_m(u_m) + o.noise * normal(rng);
    const double raw = total_sd > 0.0 ? o.label_mean + o.label_std * y / total_sd : o.label_mean;
    rec.popularity_raw = static_cast<std::int32_t>(std::clamp(std::round(raw), 0.0, 100.0));

    corpus.records.push_back(std::move(rec));
  }
  return corpus;
}

}  // namespace lyricnet::dataio
