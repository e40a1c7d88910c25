#include "lyricnet/dataio/features.hpp"

#include <cmath>

#include "lyricnet/dataio/cleaning.hpp"
#include "lyricnet/errors.hpp"

namespace lyricnet::dataio {

ModalityMask ModalityMask::parse(std::string_view text) {
  ModalityMask mask;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok == "HH") {
      mask.hh = true;
    } else if (tok == "LL") {
      mask.ll = true;
    } else if (tok == "LR") {
      mask.lr = true;
    } else if (tok == "M") {
      mask.m = true;
    } else if (!tok.empty()) {
      throw UsageError("unknown modality '" + std::string(tok) + "' (expected HH, LL, LR, M)");
    }
    pos = end + 1;
  }
  if (mask.empty()) throw UsageError("modality mask '" + std::string(text) + "' is empty");
  return mask;
}

bool ModalityMask::contains(const ModalityMask& o) const {
  return (hh || !o.hh) && (ll || !o.ll) && (lr || !o.lr) && (m || !o.m);
}

std::string ModalityMask::to_string() const {
  std::string out;
  auto add = [&out](bool on, const char* tag) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += tag;
  };
  add(hh, "HH");
  add(ll, "LL");
  add(lr, "LR");
  add(m, "M");
  return out;
}

std::vector<ModalityMask> parse_mask_list(std::string_view text) {
  std::vector<ModalityMask> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(';', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    if (tok.find_first_not_of(' ') != std::string_view::npos) out.push_back(ModalityMask::parse(tok));
    pos = end + 1;
  }
  if (out.empty()) throw UsageError("empty modality mask list");
  return out;
}

std::vector<ModalityMask> all_nonempty_masks() {
  std::vector<ModalityMask> out;
  for (std::size_t size = 4; size >= 1; --size) {
    for (unsigned bits = 15; bits >= 1; --bits) {
      ModalityMask m{(bits & 8) != 0, (bits & 4) != 0, (bits & 2) != 0, (bits & 1) != 0};
      if (m.count() == size) out.push_back(m);
    }
  }
  return out;
}

Matrix FeatureBundle::stacked() const {
  const Matrix* blocks[] = {&hl, &ll, &lyr, &meta, &stylo};
  std::vector<const Matrix*> present;
  for (const Matrix* b : blocks) {
    if (b->cols() > 0) present.push_back(b);
  }
  if (present.empty()) return Matrix(rows(), 0);
  return numcore::hconcat(present);
}

FeatureBundle assemble_features(std::span<const TrackRecord> records, const ModalityMask& mask,
                                bool include_stylometric) {
  const std::size_t n = records.size();
  std::size_t emb_dim = 0;
  if (mask.lr) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!records[i].lyric_embedding) {
        throw DataError("LR modality requested but track " + records[i].track_id + " has no lyric embedding");
      }
    }
    if (n > 0) emb_dim = records[0].lyric_embedding->size();
  }
  if (include_stylometric) {
    for (const TrackRecord& r : records) {
      if (!r.stylo_text) throw DataError("stylometric columns requested but track " + r.track_id + " has none");
    }
  }

  FeatureBundle b;
  b.hl = Matrix(n, mask.hh ? kHlAudioDim : 0);
  b.ll = Matrix(n, mask.ll ? kLlAudioDim : 0);
  b.lyr = Matrix(n, emb_dim);
  b.meta = Matrix(n, mask.m ? kMetadataDim : 0);
  b.stylo = Matrix(n, include_stylometric ? kStyloDim : 0);
  b.target.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const TrackRecord& r = records[i];
    if (mask.hh) std::copy(r.hl_audio.begin(), r.hl_audio.end(), b.hl.row(i).begin());
    if (mask.ll) {
      if (r.ll_audio.size() != kLlAudioDim) throw DataError("track " + r.track_id + ": ll_audio has wrong length");
      std::copy(r.ll_audio.begin(), r.ll_audio.end(), b.ll.row(i).begin());
    }
    if (mask.lr) {
      if (r.lyric_embedding->size() != emb_dim) {
        throw DataError("track " + r.track_id + ": lyric embedding dimension differs from the first record");
      }
      std::copy(r.lyric_embedding->begin(), r.lyric_embedding->end(), b.lyr.row(i).begin());
    }
    if (mask.m) std::copy(r.metadata.begin(), r.metadata.end(), b.meta.row(i).begin());
    if (include_stylometric) std::copy(r.stylo_text->begin(), r.stylo_text->end(), b.stylo.row(i).begin());
    b.target[i] = static_cast<float>(normalize_popularity(r.popularity_raw));
  }
  return b;
}

MinMaxScaler MinMaxScaler::fit(const Matrix& x, std::span<const std::size_t> rows) {
  if (rows.empty() && x.cols() > 0) throw DataError("min-max scaler: no rows to fit on");
  MinMaxScaler s;
  s.min.assign(x.cols(), 0.0f);
  s.max.assign(x.cols(), 0.0f);
  for (std::size_t c = 0; c < x.cols(); ++c) {
    float lo = x(rows[0], c), hi = lo;
    for (std::size_t r : rows) {
      lo = std::min(lo, x(r, c));
      hi = std::max(hi, x(r, c));
    }
    s.min[c] = lo;
    s.max[c] = hi;
  }
  return s;
}

Matrix MinMaxScaler::transform(const Matrix& x) const {
  if (x.cols() != min.size()) throw ShapeError("min-max scaler fitted on a different width");
  Matrix out(x.rows(), x.cols());
  for (std::size_t c = 0; c < x.cols(); ++c) {
    const double lo = min[c];
    const double range = static_cast<double>(max[c]) - lo;
    for (std::size_t r = 0; r < x.rows(); ++r) {
      out(r, c) = range > 0.0 ? static_cast<float>((x(r, c) - lo) / range) : 0.0f;
    }
  }
  return out;
}

Standardizer Standardizer::fit(const Matrix& x, std::span<const std::size_t> rows) {
  if (rows.empty() && x.cols() > 0) throw DataError("standardizer: no rows to fit on");
  Standardizer s;
  s.mean.assign(x.cols(), 0.0f);
  s.stddev.assign(x.cols(), 0.0f);
  const double n = static_cast<double>(rows.size());
  for (std::size_t c = 0; c < x.cols(); ++c) {
    double sum = 0.0;
    for (std::size_t r : rows) sum += x(r, c);
    const double mean = sum / n;
    double sq = 0.0;
    for (std::size_t r : rows) sq += (x(r, c) - mean) * (x(r, c) - mean);
    s.mean[c] = static_cast<float>(mean);
    s.stddev[c] = static_cast<float>(std::sqrt(sq / n));
  }
  return s;
}

Matrix Standardizer::transform(const Matrix& x) const {
  if (x.cols() != mean.size()) throw ShapeError("standardizer fitted on a different width");
  Matrix out(x.rows(), x.cols());
  for (std::size_t c = 0; c < x.cols(); ++c) {
    const double mu = mean[c], sd = stddev[c];
    for (std::size_t r = 0; r < x.rows(); ++r) {
      out(r, c) = sd > 0.0 ? static_cast<float>((x(r, c) - mu) / sd) : 0.0f;
    }
  }
  return out;
}

}  // namespace lyricnet::dataio
