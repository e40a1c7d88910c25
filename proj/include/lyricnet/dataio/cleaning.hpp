#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lyricnet/dataio/track.hpp"

namespace lyricnet::dataio {

inline constexpr std::uint32_t kMinLyricsChars = 100;
inline constexpr std::uint32_t kMaxLyricsChars = 7000;

struct CleaningRules {
  std::uint32_t min_chars = kMinLyricsChars;  // inclusive
  std::uint32_t max_chars = kMaxLyricsChars;  // inclusive
  std::vector<std::string> languages = {"en", "es", "pt", "fr", "de"};
};

struct RejectionTally {
  std::size_t too_short = 0;
  std::size_t too_long = 0;
  std::size_t language = 0;

  std::size_t total() const { return too_short + too_long + language; }
  bool operator==(const RejectionTally&) const = default;
};

struct CleanResult {
  std::vector<TrackRecord> kept;
  RejectionTally rejected;
};

// Keeps records whose lyric length lies in [min_chars, max_chars] and whose
// language is whitelisted. A record failing several rules is tallied under
// the first one checked (length, then language).
CleanResult clean_corpus(std::span<const TrackRecord> records, const CleaningRules& rules = {});

// raw / 100, for raw in [0, 100].
double normalize_popularity(double raw);

}  // namespace lyricnet::dataio
