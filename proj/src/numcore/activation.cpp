#include "lyricnet/numcore/activation.hpp"

#include "lyricnet/errors.hpp"

namespace lyricnet::numcore {

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::kReLU: return "relu";
    case Activation::kSELU: return "selu";
    case Activation::kSiLU: return "silu";
    case Activation::kGELU: return "gelu";
    case Activation::kSigmoid: return "sigmoid";
    case Activation::kIdentity: return "identity";
  }
  return "identity";
}

Activation parse_activation(std::string_view name) {
  for (Activation a : {Activation::kReLU, Activation::kSELU, Activation::kSiLU, Activation::kGELU,
                       Activation::kSigmoid, Activation::kIdentity}) {
    if (to_string(a) == name) return a;
  }
  throw UsageError("unknown activation '" + std::string(name) + "' (expected relu|selu|silu|gelu|sigmoid|identity)");
}

Matrix apply_activation(const Matrix& x, Activation kind, ActivationMode mode) {
  Matrix out(x.rows(), x.cols());
  auto src = x.values();
  auto dst = out.values();
  if (mode == ActivationMode::kForward) {
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = static_cast<float>(activate<double>(kind, src[i]));
  } else {
    for (std::size_t i = 0; i < src.size(); ++i) {
      dst[i] = static_cast<float>(activate_derivative<double>(kind, src[i]));
    }
  }
  return out;
}

void apply_activation_inplace(Matrix& x, Activation kind) {
  if (kind == Activation::kIdentity) return;
  for (float& v : x.values()) v = static_cast<float>(activate<double>(kind, v));
}

}  // namespace lyricnet::numcore
