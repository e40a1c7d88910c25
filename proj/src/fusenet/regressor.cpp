#include "lyricnet/fusenet/regressor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "lyricnet/errors.hpp"
#include "lyricnet/hashing.hpp"
#include "lyricnet/numcore/adam.hpp"
#include "lyricnet/numcore/loss.hpp"

namespace lyricnet::fusenet {

namespace {

struct Errors {
  double mse = 0.0;
  double mae = 0.0;
};

Errors evaluate(const Network& net, const Matrix& x, std::span<const float> y) {
  if (x.rows() == 0) return {};
  const std::vector<float> p = predict_values(net, x);
  Errors e;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = static_cast<double>(p[i]) - static_cast<double>(y[i]);
    e.mse += d * d;
    e.mae += std::abs(d);
  }
  e.mse /= static_cast<double>(p.size());
  e.mae /= static_cast<double>(p.size());
  return e;
}

Matrix target_column(std::span<const float> y, std::span<const std::size_t> idx) {
  Matrix t(idx.size(), 1);
  for (std::size_t i = 0; i < idx.size(); ++i) t(i, 0) = y[idx[i]];
  return t;
}

}  // namespace

std::vector<float> predict_values(const Network& net, const Matrix& x) {
  if (net.out_dim() != 1) throw ShapeError("predict_values: network has " + std::to_string(net.out_dim()) + " outputs");
  const Matrix out = numcore::predict(net, x);
  return {out.values().begin(), out.values().end()};
}

TrainedRegressor train_regressor(Network init, const Matrix& x_train, std::span<const float> y_train,
                                 const Matrix& x_val, std::span<const float> y_val, const RegressorTrainConfig& c) {
  if (x_train.rows() != y_train.size() || x_val.rows() != y_val.size()) {
    throw ShapeError("train_regressor: feature rows and targets disagree");
  }
  if (x_train.rows() == 0) throw DataError("train_regressor: empty training set");
  if (c.batch_size == 0) throw UsageError("train_regressor: batch size must be positive");
  if (!(c.dropout >= 0.0 && c.dropout < 1.0)) throw UsageError("train_regressor: dropout must lie in [0, 1)");

  TrainedRegressor out;
  out.net = std::move(init);
  const bool has_val = x_val.rows() > 0;

  auto record = [&](std::size_t epoch, double train_mse) {
    const Errors v = has_val ? evaluate(out.net, x_val, y_val) : evaluate(out.net, x_train, y_train);
    if (!std::isfinite(v.mse)) throw DivergenceError("regressor: non-finite validation loss at epoch " + std::to_string(epoch));
    out.history.push_back({epoch, train_mse, v.mse, v.mae});
    return v.mae;
  };
  record(0, evaluate(out.net, x_train, y_train).mse);

  numcore::AdamState adam(out.net, {c.learning_rate});
  std::mt19937_64 shuffle_rng(derive_seed(c.seed, "shuffle"));
  std::mt19937_64 dropout_rng(derive_seed(c.seed, "dropout"));
  numcore::ForwardOptions fwd;
  fwd.dropout_rate = static_cast<float>(c.dropout);
  fwd.rng = &dropout_rng;

  std::vector<std::size_t> perm(x_train.rows());
  std::iota(perm.begin(), perm.end(), 0);
  double best_mae = out.history[0].val_mae;
  Network best = out.net;
  std::size_t since_best = 0;

  for (std::size_t epoch = 1; epoch <= c.epochs; ++epoch) {
    std::shuffle(perm.begin(), perm.end(), shuffle_rng);
    double weighted = 0.0;
    std::size_t batch_no = 0;
    for (std::size_t start = 0; start < perm.size(); start += c.batch_size, ++batch_no) {
      const std::size_t stop = std::min(perm.size(), start + c.batch_size);
      const std::span<const std::size_t> idx(perm.data() + start, stop - start);
      const Matrix xb = numcore::select_rows(x_train, idx);
      const Matrix yb = target_column(y_train, idx);
      const numcore::Trace trace = numcore::forward(out.net, xb, fwd);
      const numcore::LossResult loss = numcore::mse_loss(trace.output(), yb);
      if (!std::isfinite(loss.value)) {
        throw DivergenceError("regressor: non-finite loss at epoch " + std::to_string(epoch) + " batch " +
                              std::to_string(batch_no));
      }
      try {
        numcore::adam_step(out.net, numcore::backward(out.net, trace, loss.gradient), adam);
      } catch (const DivergenceError& e) {
        throw DivergenceError("regressor: epoch " + std::to_string(epoch) + " batch " + std::to_string(batch_no) + ": " +
                              e.what());
      }
      weighted += loss.value * static_cast<double>(idx.size());
    }
    const double val_mae = record(epoch, weighted / static_cast<double>(perm.size()));
    if (val_mae < best_mae) {
      best_mae = val_mae;
      out.best_epoch = epoch;
      since_best = 0;
      if (c.patience > 0) best = out.net;
    } else if (c.patience > 0 && ++since_best >= c.patience) {
      break;
    }
  }

  if (c.patience > 0) {
    out.net = std::move(best);
  } else {
    out.best_epoch = out.history.back().epoch;
  }
  return out;
}

std::string regressor_history_csv(const std::vector<RegressorEpoch>& history) {
  std::ostringstream s;
  s.precision(9);
  s << "epoch,train_mse,val_mse,val_mae\n";
  for (const RegressorEpoch& e : history) {
    s << e.epoch << ',' << e.train_mse << ',' << e.val_mse << ',' << e.val_mae << '\n';
  }
  return s.str();
}

}  // namespace lyricnet::fusenet
