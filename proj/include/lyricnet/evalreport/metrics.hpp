#pragma once

#include <span>
#include <string>
#include <vector>

namespace lyricnet::evalreport {

struct ErrorPair {
  double mae = 0.0;
  double mse = 0.0;

  bool operator==(const ErrorPair&) const = default;
};

// MAE and MSE accumulated in double. Throws DataError on empty or
// misaligned input.
ErrorPair compute_metrics(std::span<const float> preds, std::span<const float> targets);

struct FoldMetrics {
  std::size_t fold = 0;
  ErrorPair train;
  ErrorPair val;
  std::size_t best_epoch = 0;
  std::string run_fingerprint;

  bool operator==(const FoldMetrics&) const = default;
};

// All values on the normalized [0, 1] popularity scale. train/val are
// means over folds; test comes from the selected (median-val) fold.
struct MetricsReport {
  std::string mask;
  std::string model;
  ErrorPair train;
  ErrorPair val;
  ErrorPair test;
  std::vector<FoldMetrics> folds;
  std::size_t selected_fold = 0;
  std::string config_fingerprint;  // run fingerprint of the selected fold

  bool operator==(const MetricsReport&) const = default;
};

// Fold with the median validation MAE; the lower middle one when the fold
// count is even. Ties go to the smaller fold index.
std::size_t median_val_fold(std::span<const FoldMetrics> folds);

}  // namespace lyricnet::evalreport
