#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lyricnet/dataio/track.hpp"
#include "lyricnet/numcore/matrix.hpp"

namespace lyricnet::dataio {

using numcore::Matrix;

// Subset of the four feature groups fed to a model.
struct ModalityMask {
  bool hh = false;  // high-level audio
  bool ll = false;  // low-level audio
  bool lr = false;  // lyric embedding
  bool m = false;   // metadata

  static ModalityMask all() { return {true, true, true, true}; }
  // Parses "HH,LL,LR,M" (any order, case-sensitive tokens).
  static ModalityMask parse(std::string_view text);

  bool empty() const { return !hh && !ll && !lr && !m; }
  std::size_t count() const { return int(hh) + int(ll) + int(lr) + int(m); }
  bool contains(const ModalityMask& other) const;
  // Canonical "HH,LL,LR,M" ordering.
  std::string to_string() const;

  bool operator==(const ModalityMask&) const = default;
};

// "HH,LL,LR,M;HH,LL,M;LR,M"
std::vector<ModalityMask> parse_mask_list(std::string_view text);
// All 15 non-empty masks, full mask first, then by decreasing size.
std::vector<ModalityMask> all_nonempty_masks();

// Column blocks in fixed order HH | LL | LR | M; absent modalities have
// zero width. target holds popularity normalized to [0, 1].
struct FeatureBundle {
  Matrix hl;
  Matrix ll;
  Matrix lyr;
  Matrix meta;
  Matrix stylo;  // only when requested (baseline replication)
  std::vector<float> target;

  std::size_t rows() const { return target.size(); }
  Matrix stacked() const;
};

FeatureBundle assemble_features(std::span<const TrackRecord> records, const ModalityMask& mask,
                                bool include_stylometric = false);

// Per-column min-max scaling fitted on a row subset. Values outside the
// fitted range map outside [0, 1] (no clipping); constant columns map to 0.
struct MinMaxScaler {
  std::vector<float> min;
  std::vector<float> max;

  static MinMaxScaler fit(const Matrix& x, std::span<const std::size_t> rows);
  Matrix transform(const Matrix& x) const;
  bool operator==(const MinMaxScaler&) const = default;
};

// Per-column z-scoring fitted on a row subset; zero-variance columns map to 0.
struct Standardizer {
  std::vector<float> mean;
  std::vector<float> stddev;

  static Standardizer fit(const Matrix& x, std::span<const std::size_t> rows);
  Matrix transform(const Matrix& x) const;
  bool operator==(const Standardizer&) const = default;
};

}  // namespace lyricnet::dataio
