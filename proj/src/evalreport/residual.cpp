#include "lyricnet/evalreport/residual.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "lyricnet/errors.hpp"

namespace lyricnet::evalreport {

namespace {

double mean_abs(std::span<const double> residuals, std::span<const std::size_t> idx) {
  if (idx.empty()) return 0.0;
  double s = 0.0;
  for (std::size_t i : idx) s += std::abs(residuals[i]);
  return s / static_cast<double>(idx.size());
}

std::vector<SegmentError> terciles(const ResidualReport& r, std::span<const dataio::TrackRecord> records) {
  const std::size_t n = records.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const float pa = records[a].metadata[dataio::kArtistPopularity];
    const float pb = records[b].metadata[dataio::kArtistPopularity];
    if (pa != pb) return pa < pb;
    return records[a].track_id < records[b].track_id;
  });
  const std::size_t cut1 = (n + 2) / 3;
  const std::size_t cut2 = (2 * n + 2) / 3;
  const std::size_t bounds[] = {0, cut1, cut2, n};
  const char* names[] = {"low", "mid", "high"};
  std::vector<SegmentError> out;
  for (std::size_t s = 0; s < 3; ++s) {
    std::span<const std::size_t> idx(order.data() + bounds[s], bounds[s + 1] - bounds[s]);
    SegmentError seg;
    seg.name = names[s];
    seg.count = idx.size();
    if (!idx.empty()) {
      seg.min_artist_popularity = records[idx.front()].metadata[dataio::kArtistPopularity];
      seg.max_artist_popularity = records[idx.back()].metadata[dataio::kArtistPopularity];
    }
    seg.mae = mean_abs(r.residuals, idx);
    out.push_back(seg);
  }
  return out;
}

std::vector<YearError> by_year(const ResidualReport& r, std::span<const dataio::TrackRecord> records) {
  std::map<int, std::vector<double>> errors;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].release_year) errors[*records[i].release_year].push_back(std::abs(r.residuals[i]));
  }
  std::vector<YearError> out;
  for (auto& [year, errs] : errors) {
    if (errs.size() < kMinTracksPerYear) continue;
    std::sort(errs.begin(), errs.end());
    YearError y;
    y.year = year;
    y.count = errs.size();
    y.mae = std::accumulate(errs.begin(), errs.end(), 0.0) / static_cast<double>(errs.size());
    y.q1 = quantile_sorted(errs, 0.25);
    y.median = quantile_sorted(errs, 0.5);
    y.q3 = quantile_sorted(errs, 0.75);
    out.push_back(y);
  }
  return out;
}

}  // namespace

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw DataError("quantile of an empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

ResidualReport residual_report(std::span<const float> preds, std::span<const float> targets,
                               std::span<const dataio::TrackRecord> records) {
  if (preds.size() != targets.size() || preds.size() != records.size()) {
    throw DataError("residual_report: predictions, targets and records must be aligned");
  }
  if (preds.empty()) throw DataError("residual_report: empty input");

  ResidualReport r;
  const std::size_t n = preds.size();
  const double dn = static_cast<double>(n);
  r.n = n;
  r.residuals.resize(n);
  std::vector<double> bin_pred(kCalibrationBins, 0.0), bin_actual(kCalibrationBins, 0.0);
  std::vector<std::size_t> bin_count(kCalibrationBins, 0);
  std::size_t pb = 0, ab = 0, pa = 0, aa = 0;
  r.stats.min = r.stats.max = static_cast<double>(preds[0]) - static_cast<double>(targets[0]);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = preds[i], t = targets[i];
    const double d = p - t;
    r.residuals[i] = d;
    r.stats.mean += d;
    r.stats.min = std::min(r.stats.min, d);
    r.stats.max = std::max(r.stats.max, d);
    r.mae += std::abs(d);
    r.mse += d * d;
    r.mean_actual += t;
    r.mean_predicted += p;
    pb += p < kLowTail;
    ab += t < kLowTail;
    pa += p > kHighTail;
    aa += t > kHighTail;
    const double clamped = std::clamp(p, 0.0, 1.0);
    const std::size_t bin =
        std::min(kCalibrationBins - 1, static_cast<std::size_t>(std::floor(clamped * static_cast<double>(kCalibrationBins))));
    bin_pred[bin] += p;
    bin_actual[bin] += t;
    ++bin_count[bin];
  }
  r.stats.mean /= dn;
  r.mae /= dn;
  r.mse /= dn;
  r.mean_actual /= dn;
  r.mean_predicted /= dn;
  double ss = 0.0;
  for (double d : r.residuals) ss += (d - r.stats.mean) * (d - r.stats.mean);
  r.stats.stddev = std::sqrt(ss / dn);
  r.tails = {static_cast<double>(pb) / dn, static_cast<double>(ab) / dn, static_cast<double>(pa) / dn,
             static_cast<double>(aa) / dn};

  for (std::size_t b = 0; b < kCalibrationBins; ++b) {
    CalibrationBin bin;
    bin.lower = static_cast<double>(b) / kCalibrationBins;
    bin.upper = static_cast<double>(b + 1) / kCalibrationBins;
    bin.count = bin_count[b];
    if (bin.count > 0) {
      bin.mean_predicted = bin_pred[b] / static_cast<double>(bin.count);
      bin.mean_actual = bin_actual[b] / static_cast<double>(bin.count);
    }
    r.calibration.push_back(bin);
  }

  if (n >= 3) {
    r.segments = terciles(r, records);
  } else {
    r.notices.push_back("segments: fewer than 3 tracks");
  }

  const bool any_year = std::any_of(records.begin(), records.end(), [](const auto& rec) { return rec.release_year; });
  if (!any_year) {
    r.notices.push_back("yearwise: no release_year values");
  } else {
    r.yearwise = by_year(r, records);
    if (r.yearwise->empty()) r.notices.push_back("yearwise: no year with at least 5 tracks");
  }
  return r;
}

}  // namespace lyricnet::evalreport
