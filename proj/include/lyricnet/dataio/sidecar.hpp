#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lyricnet/dataio/track.hpp"

namespace lyricnet::dataio {

// Lyric-embedding sidecar written by the extraction client:
//   "LEMB" | u32 dim | u32 count | count x (u16 id_len, id bytes, f32 x dim)
// all little-endian.
struct EmbeddingSidecar {
  std::uint32_t dim = 0;
  std::vector<std::string> ids;
  std::vector<std::vector<float>> vectors;

  bool operator==(const EmbeddingSidecar&) const = default;
};

EmbeddingSidecar parse_sidecar(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_sidecar(const EmbeddingSidecar& sidecar);
EmbeddingSidecar read_sidecar(const std::filesystem::path& path);
void write_sidecar(const EmbeddingSidecar& sidecar, const std::filesystem::path& path);

struct AttachResult {
  std::size_t attached = 0;
  std::vector<std::string> missing_ids;  // corpus tracks without a sidecar vector
};

// Sets lyric_embedding on every record whose id appears in the sidecar and
// updates the header's embedding_dim/source. A dimension clash with
// embeddings already in the corpus throws DataError.
AttachResult attach_embeddings(Corpus& corpus, const EmbeddingSidecar& sidecar, const std::string& source_label);

}  // namespace lyricnet::dataio
