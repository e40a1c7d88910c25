#include "lyricnet/numcore/loss.hpp"

#include <cmath>
#include <string>

#include "lyricnet/errors.hpp"

namespace lyricnet::numcore {

namespace {

void require_same_shape(const Matrix& pred, const Matrix& target, const char* op) {
  if (pred.rows() != target.rows() || pred.cols() != target.cols()) {
    throw ShapeError(std::string(op) + ": prediction " + std::to_string(pred.rows()) + "x" +
                     std::to_string(pred.cols()) + " vs target " + std::to_string(target.rows()) + "x" +
                     std::to_string(target.cols()));
  }
}

}  // namespace

LossResult mse_loss(const Matrix& pred, const Matrix& target) {
  require_same_shape(pred, target, "mse_loss");
  LossResult result{0.0, Matrix(pred.rows(), pred.cols())};
  const std::size_t n = pred.size();
  if (n == 0) return result;
  auto p = pred.values();
  auto t = target.values();
  auto g = result.gradient.values();
  const double scale = 2.0 / static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = static_cast<double>(p[i]) - static_cast<double>(t[i]);
    sum += d * d;
    g[i] = static_cast<float>(scale * d);
  }
  result.value = sum / static_cast<double>(n);
  return result;
}

LossResult cosine_distance_loss(const Matrix& pred, const Matrix& target) {
  require_same_shape(pred, target, "cosine_distance_loss");
  LossResult result{0.0, Matrix(pred.rows(), pred.cols())};
  const std::size_t rows = pred.rows();
  if (rows == 0) return result;
  const double inv_rows = 1.0 / static_cast<double>(rows);
  double total = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    auto p = pred.row(r);
    auto t = target.row(r);
    double pp = 0.0, tt = 0.0, pt = 0.0;
    for (std::size_t c = 0; c < p.size(); ++c) {
      pp += static_cast<double>(p[c]) * p[c];
      tt += static_cast<double>(t[c]) * t[c];
      pt += static_cast<double>(p[c]) * t[c];
    }
    if (pp == 0.0 || tt == 0.0) {
      throw DegenerateInputError("cosine distance undefined: row " + std::to_string(r) + " of the " +
                                 (pp == 0.0 ? "prediction" : "target") + " is all zero");
    }
    const double pn = std::sqrt(pp), tn = std::sqrt(tt);
    const double cos = pt / (pn * tn);
    total += 1.0 - cos;
    // d(1 - cos)/dp = -(t / (|p||t|) - cos * p / |p|^2)
    auto g = result.gradient.row(r);
    for (std::size_t c = 0; c < p.size(); ++c) {
      const double d = t[c] / (pn * tn) - cos * p[c] / pp;
      g[c] = static_cast<float>(-d * inv_rows);
    }
  }
  result.value = total * inv_rows;
  return result;
}

LossResult directional_loss(const Matrix& pred, const Matrix& target, double alpha1, double alpha2) {
  LossResult mse = mse_loss(pred, target);
  LossResult out{alpha1 * mse.value, Matrix(pred.rows(), pred.cols())};
  auto g = out.gradient.values();
  auto gm = mse.gradient.values();
  const float a1 = static_cast<float>(alpha1);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = a1 * gm[i];
  if (alpha2 == 0.0) return out;

  LossResult cd = cosine_distance_loss(pred, target);
  out.value += alpha2 * cd.value;
  const float a2 = static_cast<float>(alpha2);
  auto gc = cd.gradient.values();
  for (std::size_t i = 0; i < g.size(); ++i) g[i] += a2 * gc[i];
  return out;
}

}  // namespace lyricnet::numcore
