#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lyricnet/numcore/matrix.hpp"
#include "lyricnet/numcore/network.hpp"

namespace lyricnet::fusenet {

using numcore::Matrix;
using numcore::Network;

struct RegressorTrainConfig {
  std::size_t epochs = 150;
  double learning_rate = 1e-3;
  std::size_t batch_size = 128;
  double dropout = 0.2;
  // Early stopping on validation MAE; 0 disables it.
  std::size_t patience = 15;
  std::uint64_t seed = 0;
};

struct RegressorEpoch {
  std::size_t epoch = 0;
  double train_mse = 0.0;
  double val_mse = 0.0;
  double val_mae = 0.0;

  bool operator==(const RegressorEpoch&) const = default;
};

struct TrainedRegressor {
  Network net;
  std::vector<RegressorEpoch> history;  // entry 0: initial parameters
  std::size_t best_epoch = 0;
};

// Mini-batch Adam on MSE against a single-output network. Keeps the
// parameters with the lowest validation MAE when early stopping is enabled.
TrainedRegressor train_regressor(Network init, const Matrix& x_train, std::span<const float> y_train,
                                 const Matrix& x_val, std::span<const float> y_val, const RegressorTrainConfig& config);

// Eval-mode forward of a single-output network, one value per row.
std::vector<float> predict_values(const Network& net, const Matrix& x);

// "epoch,train_mse,val_mse,val_mae" rows.
std::string regressor_history_csv(const std::vector<RegressorEpoch>& history);

}  // namespace lyricnet::fusenet
