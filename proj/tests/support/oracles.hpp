#pragma once

// Independent double-precision references used by unit and acceptance tests.
// Nothing here calls the library's numeric kernels.

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "lyricnet/numcore/matrix.hpp"
#include "lyricnet/numcore/network.hpp"

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using lyricnet::numcore::Activation;

double act(Activation a, double x);
double act_grad(Activation a, double x);

MatrixXd to_eigen(const lyricnet::numcore::Matrix& m);
lyricnet::numcore::Matrix from_eigen(const MatrixXd& m);
lyricnet::numcore::Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double lo = -1.0,
                                        double hi = 1.0);

// Dense net in double with explicit tying: tied layers read the owner's
// weight transposed on every forward, so perturbing the owner moves both.
struct RefNet {
  struct Layer {
    MatrixXd w;  // empty for tied layers
    VectorXd b;
    Activation act;
    int tied_to = -1;
  };
  std::vector<Layer> layers;

  static RefNet from(const lyricnet::numcore::Network& net);
  MatrixXd weight_of(std::size_t l) const;
  MatrixXd forward(const MatrixXd& x) const;
  std::size_t parameter_count() const;
};

double mse(const MatrixXd& pred, const MatrixXd& target);
double mean_cosine_distance(const MatrixXd& pred, const MatrixXd& target);
double directional(const MatrixXd& pred, const MatrixXd& target, double a1, double a2);
double mean_cosine_similarity(const MatrixXd& a, const MatrixXd& b);

enum class LossKind { kMse, kDirectional };

struct NetGradient {
  std::vector<MatrixXd> w;  // empty for tied layers
  std::vector<VectorXd> b;
};

// Central differences of the loss with respect to every stored parameter.
NetGradient fd_gradient(const RefNet& net, const MatrixXd& x, const MatrixXd& target, LossKind loss, double a1,
                        double a2, double h = 1e-6);
double loss_of(const RefNet& net, const MatrixXd& x, const MatrixXd& target, LossKind loss, double a1, double a2);

// ||a - b|| / max(||a||, ||b||, floor) over the flattened vectors.
double relative_error(const std::vector<double>& a, const std::vector<double>& b, double floor = 1e-8);

// Central difference dLoss/dPred in double.
MatrixXd fd_loss_gradient(const MatrixXd& pred, const MatrixXd& target, LossKind loss, double a1, double a2,
                          double h = 1e-6);

// Best rank-k reconstruction MSE (mean over all entries) after centering.
double pca_reconstruction_mse(const MatrixXd& x, std::size_t k);

// Trainable scalar count: stored weights of untied layers plus every bias.
std::size_t count_parameters(const std::vector<lyricnet::numcore::LayerSpec>& layers);

}  // namespace oracle
