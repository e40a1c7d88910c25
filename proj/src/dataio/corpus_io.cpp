#include "lyricnet/dataio/corpus_io.hpp"

#include <json.hpp>

#include "lyricnet/binary_io.hpp"
#include "lyricnet/errors.hpp"
#include "lyricnet/hashing.hpp"

namespace lyricnet::dataio {

using nlohmann::json;

namespace {

// Binary record layout (all little-endian):
//   u16-prefixed track_id | u8-prefixed language | u32 lyrics_char_count |
//   u8 flags (1 = year, 2 = embedding, 4 = stylo) | i32 release_year |
//   i32 popularity | f32 x 13 | f32 x 209 | f32 x 3 | [f32 x dim] | [f32 x 6]
constexpr std::string_view kBinaryMagic = "LNC1";
constexpr std::uint8_t kFlagYear = 1;
constexpr std::uint8_t kFlagEmbedding = 2;
constexpr std::uint8_t kFlagStylo = 4;

void check_schema(std::uint32_t version) {
  if (version != kSchemaVersion) {
    throw DataError("unsupported corpus schema_version " + std::to_string(version) + " (supported: " +
                    std::to_string(kSchemaVersion) + ")");
  }
}

const json& require(const json& obj, const char* field) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) throw DataError(std::string("missing required field '") + field + "'");
  return *it;
}

template <std::size_t N>
std::array<float, N> fixed_vector(const json& obj, const char* field) {
  const json& v = require(obj, field);
  if (!v.is_array() || v.size() != N) {
    throw DataError(std::string(field) + ": length " + std::to_string(v.is_array() ? v.size() : 0) + ", expected " +
                    std::to_string(N));
  }
  std::array<float, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = v[i].get<float>();
  return out;
}

std::vector<float> float_vector(const json& v, const char* field) {
  if (!v.is_array()) throw DataError(std::string(field) + ": expected a number array");
  std::vector<float> out;
  out.reserve(v.size());
  for (const json& x : v) out.push_back(x.get<float>());
  return out;
}

CorpusHeader header_from_json(const json& j) {
  if (!j.is_object() || j.value("type", "") != "header") {
    throw DataError("corpus line 1 must be a header object with \"type\":\"header\"");
  }
  CorpusHeader h;
  h.schema_version = require(j, "schema_version").get<std::uint32_t>();
  check_schema(h.schema_version);
  h.embedding_dim = j.value("embedding_dim", 0u);
  h.embedding_source = j.value("embedding_source", "");
  if (j.contains("language_whitelist")) h.language_whitelist = j["language_whitelist"].get<std::vector<std::string>>();
  return h;
}

json header_to_json(const CorpusHeader& h) {
  return json{{"type", "header"},
              {"schema_version", h.schema_version},
              {"embedding_dim", h.embedding_dim},
              {"embedding_source", h.embedding_source},
              {"language_whitelist", h.language_whitelist}};
}

TrackRecord record_from_json(const json& j) {
  if (!j.is_object()) throw DataError("record is not a JSON object");
  TrackRecord r;
  r.track_id = require(j, "track_id").get<std::string>();
  r.lyrics_char_count = require(j, "lyrics_char_count").get<std::uint32_t>();
  r.language = require(j, "language").get<std::string>();
  if (auto it = j.find("release_year"); it != j.end() && !it->is_null()) r.release_year = it->get<std::int32_t>();
  r.popularity_raw = require(j, "popularity").get<std::int32_t>();
  r.hl_audio = fixed_vector<kHlAudioDim>(j, "hl_audio");
  r.ll_audio = float_vector(require(j, "ll_audio"), "ll_audio");
  r.metadata = fixed_vector<kMetadataDim>(j, "metadata");
  if (auto it = j.find("lyric_embedding"); it != j.end() && !it->is_null()) {
    r.lyric_embedding = float_vector(*it, "lyric_embedding");
  }
  if (auto it = j.find("stylo_text"); it != j.end() && !it->is_null()) r.stylo_text = fixed_vector<kStyloDim>(j, "stylo_text");
  return r;
}

json record_to_json(const TrackRecord& r) {
  json j{{"track_id", r.track_id},
         {"lyrics_char_count", r.lyrics_char_count},
         {"language", r.language},
         {"release_year", r.release_year ? json(*r.release_year) : json(nullptr)},
         {"popularity", r.popularity_raw},
         {"hl_audio", r.hl_audio},
         {"ll_audio", r.ll_audio},
         {"metadata", r.metadata}};
  if (r.lyric_embedding) j["lyric_embedding"] = *r.lyric_embedding;
  if (r.stylo_text) j["stylo_text"] = *r.stylo_text;
  return j;
}

void accept(LoadResult& result, TrackRecord record, std::size_t location, const LoadOptions& options) {
  std::string problem = validate_record(record, result.corpus.header);
  if (problem.empty()) {
    result.corpus.records.push_back(std::move(record));
    return;
  }
  if (options.strict) throw DataError("record at " + std::to_string(location) + ": " + problem);
  result.issues.push_back({location, std::move(problem)});
}

}  // namespace

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "jsonl") return CorpusFormat::kJsonl;
  if (name == "binary" || name == "bin") return CorpusFormat::kBinary;
  throw UsageError("unknown corpus format '" + std::string(name) + "' (expected jsonl|binary)");
}

CorpusFormat format_for_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return ext == ".jsonl" || ext == ".json" ? CorpusFormat::kJsonl : CorpusFormat::kBinary;
}

LoadResult parse_corpus_jsonl(std::string_view text, const LoadOptions& options) {
  LoadResult result;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      if (!have_header || options.strict) throw DataError("line " + std::to_string(line_no) + ": " + e.what());
      result.issues.push_back({line_no, e.what()});
      continue;
    }
    if (!have_header) {
      result.corpus.header = header_from_json(j);
      have_header = true;
      continue;
    }
    try {
      accept(result, record_from_json(j), line_no, options);
    } catch (const DataError& e) {
      if (options.strict) throw DataError("line " + std::to_string(line_no) + ": " + e.what());
      result.issues.push_back({line_no, e.what()});
    } catch (const json::exception& e) {
      if (options.strict) throw DataError("line " + std::to_string(line_no) + ": " + e.what());
      result.issues.push_back({line_no, e.what()});
    }
  }
  if (!have_header) throw DataError("corpus has no header line");
  return result;
}

LoadResult parse_corpus_binary(std::span<const std::uint8_t> bytes, const LoadOptions& options) {
  ByteReader in(bytes, "LNC1 corpus");
  if (in.raw(kBinaryMagic.size(), "magic") != kBinaryMagic) throw DataError("not an LNC1 corpus (bad magic)");
  LoadResult result;
  CorpusHeader& h = result.corpus.header;
  h.schema_version = in.u32("schema_version");
  check_schema(h.schema_version);
  h.embedding_dim = in.u32("embedding_dim");
  h.embedding_source = in.string_u16("embedding_source");
  const std::uint32_t n_lang = in.u32("language count");
  h.language_whitelist.clear();
  for (std::uint32_t i = 0; i < n_lang; ++i) h.language_whitelist.push_back(in.string_u8("language"));
  const std::uint32_t count = in.u32("record count");
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::size_t offset = in.offset();
    TrackRecord r;
    r.track_id = in.string_u16("track_id");
    r.language = in.string_u8("language");
    r.lyrics_char_count = in.u32("lyrics_char_count");
    const std::uint8_t flags = in.u8("flags");
    const std::int32_t year = in.i32("release_year");
    if (flags & kFlagYear) r.release_year = year;
    r.popularity_raw = in.i32("popularity");
    in.f32s(r.hl_audio, "hl_audio");
    in.f32s(r.ll_audio, "ll_audio");
    in.f32s(r.metadata, "metadata");
    if (flags & kFlagEmbedding) {
      r.lyric_embedding.emplace(h.embedding_dim);
      in.f32s(*r.lyric_embedding, "lyric_embedding");
    }
    if (flags & kFlagStylo) {
      r.stylo_text.emplace();
      in.f32s(*r.stylo_text, "stylo_text");
    }
    accept(result, std::move(r), offset, options);
  }
  if (!in.at_end()) throw IntegrityError("LNC1 corpus: trailing bytes after last record");
  return result;
}

LoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format, const LoadOptions& options) {
  if (format == CorpusFormat::kJsonl) return parse_corpus_jsonl(read_file_text(path), options);
  const auto bytes = read_file_bytes(path);
  return parse_corpus_binary(bytes, options);
}

LoadResult load_corpus(const std::filesystem::path& path, const LoadOptions& options) {
  return load_corpus(path, format_for_path(path), options);
}

std::string to_jsonl(const Corpus& corpus) {
  std::string out = header_to_json(corpus.header).dump();
  out.push_back('\n');
  for (const TrackRecord& r : corpus.records) {
    out += record_to_json(r).dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<std::uint8_t> to_binary(const Corpus& corpus) {
  const CorpusHeader& h = corpus.header;
  ByteWriter out;
  out.put_raw(kBinaryMagic);
  out.put_u32(h.schema_version);
  out.put_u32(h.embedding_dim);
  out.put_string_u16(h.embedding_source);
  out.put_u32(static_cast<std::uint32_t>(h.language_whitelist.size()));
  for (const auto& lang : h.language_whitelist) out.put_string_u8(lang);
  out.put_u32(static_cast<std::uint32_t>(corpus.records.size()));
  for (const TrackRecord& r : corpus.records) {
    if (std::string problem = validate_record(r, h); !problem.empty()) {
      throw DataError("cannot encode record " + r.track_id + ": " + problem);
    }
    out.put_string_u16(r.track_id);
    out.put_string_u8(r.language);
    out.put_u32(r.lyrics_char_count);
    std::uint8_t flags = 0;
    if (r.release_year) flags |= kFlagYear;
    if (r.lyric_embedding) flags |= kFlagEmbedding;
    if (r.stylo_text) flags |= kFlagStylo;
    out.put_u8(flags);
    out.put_i32(r.release_year.value_or(0));
    out.put_i32(r.popularity_raw);
    out.put_f32s(r.hl_audio);
    out.put_f32s(r.ll_audio);
    out.put_f32s(r.metadata);
    if (r.lyric_embedding) out.put_f32s(*r.lyric_embedding);
    if (r.stylo_text) out.put_f32s(*r.stylo_text);
  }
  return out.take();
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path, CorpusFormat format) {
  if (format == CorpusFormat::kJsonl) {
    write_file_text(path, to_jsonl(corpus));
  } else {
    write_file_bytes(path, to_binary(corpus));
  }
}

std::string corpus_fingerprint(const Corpus& corpus) { return to_hex(sha256(to_binary(corpus))); }

}  // namespace lyricnet::dataio
