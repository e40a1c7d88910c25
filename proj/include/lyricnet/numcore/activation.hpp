#pragma once

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

#include "lyricnet/numcore/matrix.hpp"

namespace lyricnet::numcore {

enum class Activation { kReLU, kSELU, kSiLU, kGELU, kSigmoid, kIdentity };

enum class ActivationMode { kForward, kDerivative };

inline constexpr double kSeluLambda = 1.0507009873554805;
inline constexpr double kSeluAlpha = 1.6732632423543772;
// sqrt(2 / pi), used by the tanh form of GELU.
inline constexpr double kGeluScale = 0.7978845608028654;
inline constexpr double kGeluCubic = 0.044715;

std::string_view to_string(Activation a);
Activation parse_activation(std::string_view name);

template <std::floating_point T>
T sigmoid(T x) {
  if (x >= T(0)) {
    const T e = std::exp(-x);
    return T(1) / (T(1) + e);
  }
  const T e = std::exp(x);
  return e / (T(1) + e);
}

template <std::floating_point T>
T activate(Activation kind, T x) {
  switch (kind) {
    case Activation::kReLU:
      return x > T(0) ? x : T(0);
    case Activation::kSELU:
      return x >= T(0) ? T(kSeluLambda) * x : T(kSeluLambda) * T(kSeluAlpha) * std::expm1(x);
    case Activation::kSiLU:
      return x * sigmoid(x);
    case Activation::kGELU: {
      const T u = T(kGeluScale) * (x + T(kGeluCubic) * x * x * x);
      return T(0.5) * x * (T(1) + std::tanh(u));
    }
    case Activation::kSigmoid:
      return sigmoid(x);
    case Activation::kIdentity:
      return x;
  }
  return x;
}

// dσ/dx at the pre-activation x. ReLU uses 0 at the kink; SELU uses the
// linear branch at 0.
template <std::floating_point T>
T activate_derivative(Activation kind, T x) {
  switch (kind) {
    case Activation::kReLU:
      return x > T(0) ? T(1) : T(0);
    case Activation::kSELU:
      return x >= T(0) ? T(kSeluLambda) : T(kSeluLambda) * T(kSeluAlpha) * std::exp(x);
    case Activation::kSiLU: {
      const T s = sigmoid(x);
      return s * (T(1) + x * (T(1) - s));
    }
    case Activation::kGELU: {
      const T u = T(kGeluScale) * (x + T(kGeluCubic) * x * x * x);
      const T t = std::tanh(u);
      const T du = T(kGeluScale) * (T(1) + T(3) * T(kGeluCubic) * x * x);
      return T(0.5) * (T(1) + t) + T(0.5) * x * (T(1) - t * t) * du;
    }
    case Activation::kSigmoid: {
      const T s = sigmoid(x);
      return s * (T(1) - s);
    }
    case Activation::kIdentity:
      return T(1);
  }
  return T(1);
}

// Element-wise; evaluated in double and rounded to float.
Matrix apply_activation(const Matrix& x, Activation kind, ActivationMode mode = ActivationMode::kForward);
void apply_activation_inplace(Matrix& x, Activation kind);

}  // namespace lyricnet::numcore
