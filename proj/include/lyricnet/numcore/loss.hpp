#pragma once

#include "lyricnet/numcore/matrix.hpp"

namespace lyricnet::numcore {

struct LossResult {
  double value = 0.0;
  // dLoss/dPrediction, same shape as the prediction.
  Matrix gradient;
};

// Mean over all elements of (pred - target)^2; gradient 2(pred - target)/N.
LossResult mse_loss(const Matrix& pred, const Matrix& target);

// Mean over rows of 1 - cos(pred_row, target_row). Throws
// DegenerateInputError when either row is all zero.
LossResult cosine_distance_loss(const Matrix& pred, const Matrix& target);

// alpha1 * MSE + alpha2 * mean row-wise cosine distance. With alpha2 == 0
// the cosine term is skipped entirely, so the result is exactly alpha1 * MSE.
LossResult directional_loss(const Matrix& pred, const Matrix& target, double alpha1, double alpha2);

}  // namespace lyricnet::numcore
