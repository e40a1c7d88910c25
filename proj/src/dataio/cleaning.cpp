#include "lyricnet/dataio/cleaning.hpp"

#include <algorithm>
#include <cmath>

#include "lyricnet/errors.hpp"

namespace lyricnet::dataio {

CleanResult clean_corpus(std::span<const TrackRecord> records, const CleaningRules& rules) {
  CleanResult out;
  for (const TrackRecord& r : records) {
    if (r.lyrics_char_count < rules.min_chars) {
      ++out.rejected.too_short;
    } else if (r.lyrics_char_count > rules.max_chars) {
      ++out.rejected.too_long;
    } else if (std::find(rules.languages.begin(), rules.languages.end(), r.language) == rules.languages.end()) {
      ++out.rejected.language;
    } else {
      out.kept.push_back(r);
    }
  }
  return out;
}

double normalize_popularity(double raw) {
  if (!std::isfinite(raw) || raw < 0.0 || raw > 100.0) {
    throw DataError("popularity " + std::to_string(raw) + " outside [0, 100]");
  }
  return raw / 100.0;
}

}  // namespace lyricnet::dataio
