#include "lyricnet/evalreport/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lyricnet/errors.hpp"

namespace lyricnet::evalreport {

ErrorPair compute_metrics(std::span<const float> preds, std::span<const float> targets) {
  if (preds.size() != targets.size()) {
    throw DataError("compute_metrics: " + std::to_string(preds.size()) + " predictions vs " +
                    std::to_string(targets.size()) + " targets");
  }
  if (preds.empty()) throw DataError("compute_metrics: empty input");
  double abs_sum = 0.0, sq_sum = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const double d = static_cast<double>(preds[i]) - static_cast<double>(targets[i]);
    abs_sum += std::abs(d);
    sq_sum += d * d;
  }
  const double n = static_cast<double>(preds.size());
  return {abs_sum / n, sq_sum / n};
}

std::size_t median_val_fold(std::span<const FoldMetrics> folds) {
  if (folds.empty()) throw DataError("median_val_fold: no folds");
  std::vector<std::size_t> order(folds.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return folds[a].val.mae < folds[b].val.mae; });
  return folds[order[(folds.size() - 1) / 2]].fold;
}

}  // namespace lyricnet::evalreport
