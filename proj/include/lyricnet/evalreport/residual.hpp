#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lyricnet/dataio/track.hpp"

namespace lyricnet::evalreport {

inline constexpr double kLowTail = 0.2;
inline constexpr double kHighTail = 0.8;
inline constexpr std::size_t kCalibrationBins = 10;
inline constexpr std::size_t kMinTracksPerYear = 5;

struct TailFractions {
  double predicted_below = 0.0;  // share of predictions < 0.2
  double actual_below = 0.0;
  double predicted_above = 0.0;  // share > 0.8
  double actual_above = 0.0;
};

// Equal-width bin over the predicted value; means are 0 for empty bins.
struct CalibrationBin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
  double mean_predicted = 0.0;
  double mean_actual = 0.0;
};

struct SegmentError {
  std::string name;  // low | mid | high
  std::size_t count = 0;
  double min_artist_popularity = 0.0;
  double max_artist_popularity = 0.0;
  double mae = 0.0;
};

// Quartiles of the absolute error within one release year.
struct YearError {
  int year = 0;
  std::size_t count = 0;
  double mae = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
};

struct ResidualStats {
  double mean = 0.0;
  double stddev = 0.0;  // population
  double min = 0.0;
  double max = 0.0;
};

struct ResidualReport {
  std::size_t n = 0;
  std::vector<double> residuals;  // prediction - actual
  ResidualStats stats;
  double mae = 0.0;
  double mse = 0.0;
  double mean_actual = 0.0;
  double mean_predicted = 0.0;
  TailFractions tails;
  std::vector<CalibrationBin> calibration;
  std::optional<std::vector<SegmentError>> segments;
  std::optional<std::vector<YearError>> yearwise;
  std::vector<std::string> notices;  // why an optional section is absent
};

// Residual distribution, tails, calibration, artist-popularity terciles and
// year-wise errors. Terciles sort by (artist popularity, track_id) and cut
// at nearest ranks ceil(n/3) and ceil(2n/3); years with fewer than five
// tracks are skipped.
ResidualReport residual_report(std::span<const float> preds, std::span<const float> targets,
                               std::span<const dataio::TrackRecord> records);

// Linear-interpolation quantile of sorted values, q in [0, 1].
double quantile_sorted(std::span<const double> sorted, double q);

}  // namespace lyricnet::evalreport
