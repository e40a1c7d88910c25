#include "lyricnet/dataio/sidecar.hpp"

#include <unordered_map>

#include "lyricnet/binary_io.hpp"
#include "lyricnet/errors.hpp"

namespace lyricnet::dataio {

namespace {
constexpr std::string_view kMagic = "LEMB";
}

EmbeddingSidecar parse_sidecar(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes, "LEMB sidecar");
  if (in.raw(kMagic.size(), "magic") != kMagic) throw DataError("not an LEMB sidecar (bad magic)");
  EmbeddingSidecar s;
  s.dim = in.u32("embedding_dim");
  const std::uint32_t count = in.u32("count");
  if (s.dim == 0 && count > 0) throw DataError("LEMB sidecar declares embedding_dim 0");
  s.ids.reserve(count);
  s.vectors.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    s.ids.push_back(in.string_u16("track id"));
    std::vector<float> v(s.dim);
    in.f32s(v, "embedding");
    s.vectors.push_back(std::move(v));
  }
  if (!in.at_end()) throw IntegrityError("LEMB sidecar: trailing bytes after last vector");
  return s;
}

std::vector<std::uint8_t> encode_sidecar(const EmbeddingSidecar& s) {
  if (s.ids.size() != s.vectors.size()) throw DataError("sidecar ids/vectors length mismatch");
  ByteWriter out;
  out.put_raw(kMagic);
  out.put_u32(s.dim);
  out.put_u32(static_cast<std::uint32_t>(s.ids.size()));
  for (std::size_t i = 0; i < s.ids.size(); ++i) {
    if (s.vectors[i].size() != s.dim) throw DataError("sidecar vector for " + s.ids[i] + " has wrong dimension");
    out.put_string_u16(s.ids[i]);
    out.put_f32s(s.vectors[i]);
  }
  return out.take();
}

EmbeddingSidecar read_sidecar(const std::filesystem::path& path) { return parse_sidecar(read_file_bytes(path)); }

void write_sidecar(const EmbeddingSidecar& sidecar, const std::filesystem::path& path) {
  write_file_bytes(path, encode_sidecar(sidecar));
}

AttachResult attach_embeddings(Corpus& corpus, const EmbeddingSidecar& sidecar, const std::string& source_label) {
  for (const TrackRecord& r : corpus.records) {
    if (r.lyric_embedding && r.lyric_embedding->size() != sidecar.dim) {
      throw DataError("sidecar dimension " + std::to_string(sidecar.dim) + " clashes with existing embedding of " +
                      r.track_id);
    }
  }
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < sidecar.ids.size(); ++i) {
    if (!index.emplace(sidecar.ids[i], i).second) throw DataError("sidecar lists track id twice: " + sidecar.ids[i]);
  }
  AttachResult result;
  for (TrackRecord& r : corpus.records) {
    auto it = index.find(r.track_id);
    if (it == index.end()) {
      result.missing_ids.push_back(r.track_id);
      continue;
    }
    r.lyric_embedding = sidecar.vectors[it->second];
    ++result.attached;
  }
  corpus.header.embedding_dim = sidecar.dim;
  if (!source_label.empty()) corpus.header.embedding_source = source_label;
  return result;
}

}  // namespace lyricnet::dataio
