#include "lyricnet/pooling/pooling.hpp"

#include <algorithm>
#include <string>

#include "lyricnet/binary_io.hpp"
#include "lyricnet/errors.hpp"

namespace lyricnet::pooling {

namespace {

constexpr std::string_view kMagic = "LTOK";

void require_tokens(const TokenEmbeddingMatrix& m) {
  if (m.tokens() == 0) throw DataError("pooling: token matrix has no rows");
}

}  // namespace

PoolingStrategy parse_pooling(std::string_view name) {
  if (name == "mean") return PoolingStrategy::kMean;
  if (name == "max") return PoolingStrategy::kMax;
  if (name == "concat" || name == "concat_max_cls") return PoolingStrategy::kConcatMaxCls;
  throw UsageError("unknown pooling '" + std::string(name) + "' (expected mean|max|concat_max_cls)");
}

std::string_view to_string(PoolingStrategy s) {
  switch (s) {
    case PoolingStrategy::kMean: return "mean";
    case PoolingStrategy::kMax: return "max";
    case PoolingStrategy::kConcatMaxCls: return "concat_max_cls";
  }
  return "mean";
}

std::vector<float> mean_pool(const TokenEmbeddingMatrix& m) {
  require_tokens(m);
  std::vector<double> acc(m.dim(), 0.0);
  for (std::size_t t = 0; t < m.tokens(); ++t) {
    auto row = m.data.row(t);
    for (std::size_t d = 0; d < m.dim(); ++d) acc[d] += row[d];
  }
  std::vector<float> out(m.dim());
  const double n = static_cast<double>(m.tokens());
  for (std::size_t d = 0; d < m.dim(); ++d) out[d] = static_cast<float>(acc[d] / n);
  return out;
}

std::vector<float> max_pool(const TokenEmbeddingMatrix& m) {
  require_tokens(m);
  auto first = m.data.row(0);
  std::vector<float> out(first.begin(), first.end());
  for (std::size_t t = 1; t < m.tokens(); ++t) {
    auto row = m.data.row(t);
    for (std::size_t d = 0; d < m.dim(); ++d) out[d] = std::max(out[d], row[d]);
  }
  return out;
}

std::vector<float> concat_max_cls(const TokenEmbeddingMatrix& m) {
  require_tokens(m);
  if (!m.cls_index) throw DataError("concat_max_cls: token matrix has no CLS index");
  if (*m.cls_index >= m.tokens()) throw DataError("concat_max_cls: CLS index out of range");
  std::vector<float> out = max_pool(m);
  auto cls = m.data.row(*m.cls_index);
  out.insert(out.end(), cls.begin(), cls.end());
  return out;
}

std::vector<float> pool(const TokenEmbeddingMatrix& m, PoolingStrategy strategy) {
  switch (strategy) {
    case PoolingStrategy::kMean: return mean_pool(m);
    case PoolingStrategy::kMax: return max_pool(m);
    case PoolingStrategy::kConcatMaxCls: return concat_max_cls(m);
  }
  return mean_pool(m);
}

std::size_t pooled_dim(std::size_t token_dim, PoolingStrategy strategy) {
  return strategy == PoolingStrategy::kConcatMaxCls ? 2 * token_dim : token_dim;
}

TokenEmbeddingMatrix parse_ltok(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes, "LTOK file");
  if (in.raw(kMagic.size(), "magic") != kMagic) throw DataError("not an LTOK file (bad magic)");
  const std::uint32_t t = in.u32("token count");
  const std::uint32_t d = in.u32("dimension");
  const std::uint32_t cls = in.u32("cls index");
  TokenEmbeddingMatrix m;
  m.data = Matrix(t, d);
  in.f32s(m.data.values(), "token data");
  if (!in.at_end()) throw IntegrityError("LTOK file: trailing bytes");
  if (cls != kNoClsIndex) {
    if (cls >= t) throw DataError("LTOK file: cls index " + std::to_string(cls) + " >= token count");
    m.cls_index = cls;
  }
  return m;
}

std::vector<std::uint8_t> encode_ltok(const TokenEmbeddingMatrix& m) {
  ByteWriter out;
  out.put_raw(kMagic);
  out.put_u32(static_cast<std::uint32_t>(m.tokens()));
  out.put_u32(static_cast<std::uint32_t>(m.dim()));
  out.put_u32(m.cls_index ? static_cast<std::uint32_t>(*m.cls_index) : kNoClsIndex);
  out.put_f32s(m.data.values());
  return out.take();
}

TokenEmbeddingMatrix read_ltok(const std::filesystem::path& path) { return parse_ltok(read_file_bytes(path)); }

void write_ltok(const TokenEmbeddingMatrix& m, const std::filesystem::path& path) {
  write_file_bytes(path, encode_ltok(m));
}

}  // namespace lyricnet::pooling
