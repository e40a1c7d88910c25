#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lyricnet/numcore/matrix.hpp"

namespace lyricnet::pooling {

using numcore::Matrix;

// Last-layer token states of one lyric (T x D), padding already stripped.
struct TokenEmbeddingMatrix {
  Matrix data;
  std::optional<std::size_t> cls_index;

  std::size_t tokens() const { return data.rows(); }
  std::size_t dim() const { return data.cols(); }
  bool operator==(const TokenEmbeddingMatrix&) const = default;
};

enum class PoolingStrategy { kMean, kMax, kConcatMaxCls };

PoolingStrategy parse_pooling(std::string_view name);
std::string_view to_string(PoolingStrategy strategy);

std::vector<float> mean_pool(const TokenEmbeddingMatrix& m);
std::vector<float> max_pool(const TokenEmbeddingMatrix& m);
// [max_pool(m) ‖ row at cls_index], 2D wide.
std::vector<float> concat_max_cls(const TokenEmbeddingMatrix& m);
std::vector<float> pool(const TokenEmbeddingMatrix& m, PoolingStrategy strategy);
std::size_t pooled_dim(std::size_t token_dim, PoolingStrategy strategy);

// LTOK token-matrix file:
//   "LTOK" | u32 T | u32 D | u32 cls_index (0xFFFFFFFF = none) | f32 x T*D
// little-endian, row-major.
inline constexpr std::uint32_t kNoClsIndex = 0xFFFFFFFFu;

TokenEmbeddingMatrix parse_ltok(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_ltok(const TokenEmbeddingMatrix& m);
TokenEmbeddingMatrix read_ltok(const std::filesystem::path& path);
void write_ltok(const TokenEmbeddingMatrix& m, const std::filesystem::path& path);

}  // namespace lyricnet::pooling
