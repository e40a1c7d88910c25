#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lyricnet/dataio/track.hpp"

namespace lyricnet::dataio {

// JSONL: line 1 is {"type":"header",...}, then one record object per line.
// Binary: magic "LNC1", little-endian, see corpus_io.cpp for the layout.
enum class CorpusFormat { kJsonl, kBinary };

CorpusFormat parse_corpus_format(std::string_view name);
// ".jsonl"/".json" -> JSONL, anything else -> binary.
CorpusFormat format_for_path(const std::filesystem::path& path);

struct RecordIssue {
  // 1-based line for JSONL, byte offset of the record for binary.
  std::size_t location = 0;
  std::string message;
};

struct LoadOptions {
  // Strict mode turns the first invalid record into a DataError; otherwise
  // invalid records are skipped and reported.
  bool strict = true;
};

struct LoadResult {
  Corpus corpus;
  std::vector<RecordIssue> issues;
};

LoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format, const LoadOptions& options = {});
LoadResult load_corpus(const std::filesystem::path& path, const LoadOptions& options = {});
LoadResult parse_corpus_jsonl(std::string_view text, const LoadOptions& options = {});
LoadResult parse_corpus_binary(std::span<const std::uint8_t> bytes, const LoadOptions& options = {});

std::string to_jsonl(const Corpus& corpus);
std::vector<std::uint8_t> to_binary(const Corpus& corpus);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path, CorpusFormat format);

}  // namespace lyricnet::dataio
