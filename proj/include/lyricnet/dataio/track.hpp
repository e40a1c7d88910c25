#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lyricnet::dataio {

inline constexpr std::size_t kHlAudioDim = 13;
inline constexpr std::size_t kLlAudioDim = 209;
inline constexpr std::size_t kMetadataDim = 3;
inline constexpr std::size_t kStyloDim = 6;
inline constexpr std::uint32_t kSchemaVersion = 1;

// Metadata column order.
inline constexpr std::size_t kArtistFollowers = 0;
inline constexpr std::size_t kArtistPopularity = 1;
inline constexpr std::size_t kAvailableMarkets = 2;

// High-level audio column names, in storage order.
inline constexpr std::array<const char*, kHlAudioDim> kHlAudioNames = {
    "danceability", "energy",   "key",     "loudness", "mode",     "speechiness",   "acousticness",
    "instrumentalness", "liveness", "valence", "tempo", "duration", "time_signature"};

struct TrackRecord {
  std::string track_id;
  std::uint32_t lyrics_char_count = 0;
  std::string language;
  std::optional<std::int32_t> release_year;
  std::int32_t popularity_raw = 0;
  std::array<float, kHlAudioDim> hl_audio{};
  std::vector<float> ll_audio = std::vector<float>(kLlAudioDim, 0.0f);
  // artist followers, artist popularity (0-100), available-markets count
  std::array<float, kMetadataDim> metadata{};
  std::optional<std::vector<float>> lyric_embedding;
  // Legacy stylometric lyric statistics, baseline replication only.
  std::optional<std::array<float, kStyloDim>> stylo_text;

  bool operator==(const TrackRecord&) const = default;
};

struct CorpusHeader {
  std::uint32_t embedding_dim = 0;
  std::string embedding_source;
  std::vector<std::string> language_whitelist = {"en", "es", "pt", "fr", "de"};
  std::uint32_t schema_version = kSchemaVersion;

  bool operator==(const CorpusHeader&) const = default;
};

struct Corpus {
  CorpusHeader header;
  std::vector<TrackRecord> records;

  bool operator==(const Corpus&) const = default;
};

// Returns an empty string when the record satisfies every schema invariant,
// otherwise a message naming the offending field.
std::string validate_record(const TrackRecord& record, const CorpusHeader& header);

// Content hash over header and records (canonical binary encoding).
std::string corpus_fingerprint(const Corpus& corpus);

}  // namespace lyricnet::dataio
