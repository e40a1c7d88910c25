#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

double act(Activation a, double x) {
  switch (a) {
    case Activation::kReLU:
      return std::max(0.0, x);
    case Activation::kSELU: {
      const double lambda = 1.0507009873554805, alpha = 1.6732632423543772;
      return x > 0.0 ? lambda * x : lambda * alpha * (std::exp(x) - 1.0);
    }
    case Activation::kSiLU:
      return x / (1.0 + std::exp(-x));
    case Activation::kGELU: {
      const double c = std::sqrt(2.0 / M_PI);
      return 0.5 * x * (1.0 + std::tanh(c * (x + 0.044715 * x * x * x)));
    }
    case Activation::kSigmoid:
      return 1.0 / (1.0 + std::exp(-x));
    case Activation::kIdentity:
      return x;
  }
  return x;
}

double act_grad(Activation a, double x) {
  const double h = 1e-6;
  return (act(a, x + h) - act(a, x - h)) / (2.0 * h);
}

MatrixXd to_eigen(const lyricnet::numcore::Matrix& m) {
  MatrixXd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

lyricnet::numcore::Matrix from_eigen(const MatrixXd& m) {
  lyricnet::numcore::Matrix out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = static_cast<float>(m(r, c));
  return out;
}

lyricnet::numcore::Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double lo,
                                        double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  lyricnet::numcore::Matrix m(rows, cols);
  for (float& v : m.values()) v = static_cast<float>(u(rng));
  return m;
}

RefNet RefNet::from(const lyricnet::numcore::Network& net) {
  RefNet r;
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    const auto& spec = net.layers()[l];
    Layer layer;
    layer.act = spec.activation;
    layer.tied_to = spec.tied_to ? static_cast<int>(*spec.tied_to) : -1;
    if (!spec.tied_to) layer.w = to_eigen(net.weight(l));
    layer.b = VectorXd(spec.out_dim);
    for (std::size_t j = 0; j < spec.out_dim; ++j) layer.b(j) = net.bias(l)[j];
    r.layers.push_back(std::move(layer));
  }
  return r;
}

MatrixXd RefNet::weight_of(std::size_t l) const {
  const Layer& layer = layers[l];
  return layer.tied_to >= 0 ? MatrixXd(layers[layer.tied_to].w.transpose()) : layer.w;
}

MatrixXd RefNet::forward(const MatrixXd& x) const {
  MatrixXd a = x;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    MatrixXd z = a * weight_of(l);
    z.rowwise() += layers[l].b.transpose();
    a = z.unaryExpr([&](double v) { return act(layers[l].act, v); });
  }
  return a;
}

std::size_t RefNet::parameter_count() const {
  std::size_t n = 0;
  for (const Layer& l : layers) n += static_cast<std::size_t>(l.w.size() + l.b.size());
  return n;
}

double mse(const MatrixXd& pred, const MatrixXd& target) {
  return (pred - target).array().square().sum() / static_cast<double>(pred.size());
}

double mean_cosine_distance(const MatrixXd& pred, const MatrixXd& target) {
  double sum = 0.0;
  for (Eigen::Index r = 0; r < pred.rows(); ++r) {
    const double cos = pred.row(r).dot(target.row(r)) / (pred.row(r).norm() * target.row(r).norm());
    sum += 1.0 - cos;
  }
  return sum / static_cast<double>(pred.rows());
}

double directional(const MatrixXd& pred, const MatrixXd& target, double a1, double a2) {
  return a1 * mse(pred, target) + a2 * mean_cosine_distance(pred, target);
}

double mean_cosine_similarity(const MatrixXd& a, const MatrixXd& b) { return 1.0 - mean_cosine_distance(a, b); }

double loss_of(const RefNet& net, const MatrixXd& x, const MatrixXd& target, LossKind loss, double a1, double a2) {
  const MatrixXd out = net.forward(x);
  return loss == LossKind::kMse ? mse(out, target) : directional(out, target, a1, a2);
}

NetGradient fd_gradient(const RefNet& net, const MatrixXd& x, const MatrixXd& target, LossKind loss, double a1,
                        double a2, double h) {
  RefNet probe = net;
  NetGradient g;
  auto diff = [&](double& slot) {
    const double keep = slot;
    slot = keep + h;
    const double up = loss_of(probe, x, target, loss, a1, a2);
    slot = keep - h;
    const double down = loss_of(probe, x, target, loss, a1, a2);
    slot = keep;
    return (up - down) / (2.0 * h);
  };
  for (auto& layer : probe.layers) {
    MatrixXd gw(layer.w.rows(), layer.w.cols());
    for (Eigen::Index i = 0; i < layer.w.rows(); ++i)
      for (Eigen::Index j = 0; j < layer.w.cols(); ++j) gw(i, j) = diff(layer.w(i, j));
    VectorXd gb(layer.b.size());
    for (Eigen::Index j = 0; j < layer.b.size(); ++j) gb(j) = diff(layer.b(j));
    g.w.push_back(std::move(gw));
    g.b.push_back(std::move(gb));
  }
  return g;
}

double relative_error(const std::vector<double>& a, const std::vector<double>& b, double floor) {
  double diff = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return std::sqrt(diff) / std::max({std::sqrt(na), std::sqrt(nb), floor});
}

MatrixXd fd_loss_gradient(const MatrixXd& pred, const MatrixXd& target, LossKind loss, double a1, double a2,
                          double h) {
  MatrixXd probe = pred;
  MatrixXd g(pred.rows(), pred.cols());
  auto eval = [&] { return loss == LossKind::kMse ? mse(probe, target) : directional(probe, target, a1, a2); };
  for (Eigen::Index r = 0; r < pred.rows(); ++r) {
    for (Eigen::Index c = 0; c < pred.cols(); ++c) {
      const double keep = probe(r, c);
      probe(r, c) = keep + h;
      const double up = eval();
      probe(r, c) = keep - h;
      const double down = eval();
      probe(r, c) = keep;
      g(r, c) = (up - down) / (2.0 * h);
    }
  }
  return g;
}

double pca_reconstruction_mse(const MatrixXd& x, std::size_t k) {
  const VectorXd mean = x.colwise().mean();
  const MatrixXd centered = x.rowwise() - mean.transpose();
  Eigen::BDCSVD<MatrixXd> svd(centered);
  const VectorXd s = svd.singularValues();
  double tail = 0.0;
  for (Eigen::Index i = static_cast<Eigen::Index>(k); i < s.size(); ++i) tail += s(i) * s(i);
  return tail / static_cast<double>(x.size());
}

std::size_t count_parameters(const std::vector<lyricnet::numcore::LayerSpec>& layers) {
  std::size_t n = 0;
  for (const auto& l : layers) {
    if (!l.tied_to) n += l.in_dim * l.out_dim;
    n += l.out_dim;
  }
  return n;
}

}  // namespace oracle
