#include "lyricnet/dataio/track.hpp"

#include <cmath>

namespace lyricnet::dataio {

namespace {

template <typename Range>
bool finite(const Range& values) {
  for (float v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace

std::string validate_record(const TrackRecord& r, const CorpusHeader& header) {
  if (r.track_id.empty()) return "track_id: empty";
  if (r.popularity_raw < 0 || r.popularity_raw > 100) {
    return "popularity: " + std::to_string(r.popularity_raw) + " outside [0, 100]";
  }
  if (r.ll_audio.size() != kLlAudioDim) {
    return "ll_audio: length " + std::to_string(r.ll_audio.size()) + ", expected " + std::to_string(kLlAudioDim);
  }
  if (!finite(r.hl_audio)) return "hl_audio: non-finite value";
  if (!finite(r.ll_audio)) return "ll_audio: non-finite value";
  if (!finite(r.metadata)) return "metadata: non-finite value";
  if (r.lyric_embedding) {
    if (header.embedding_dim == 0) return "lyric_embedding: present but header declares embedding_dim 0";
    if (r.lyric_embedding->size() != header.embedding_dim) {
      return "lyric_embedding: length " + std::to_string(r.lyric_embedding->size()) + ", expected " +
             std::to_string(header.embedding_dim);
    }
    if (!finite(*r.lyric_embedding)) return "lyric_embedding: non-finite value";
  }
  if (r.stylo_text && !finite(*r.stylo_text)) return "stylo_text: non-finite value";
  return {};
}

}  // namespace lyricnet::dataio
