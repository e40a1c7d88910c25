#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lyricnet {

// Little-endian encoder for the project's binary containers.
class ByteWriter {
 public:
  void put_u8(std::uint8_t v) { buf_.push_back(v); }
  void put_u16(std::uint16_t v);
  void put_u32(std::uint32_t v);
  void put_i32(std::int32_t v) { put_u32(static_cast<std::uint32_t>(v)); }
  void put_u64(std::uint64_t v);
  void put_f32(float v);
  void put_f32s(std::span<const float> values);
  void put_bytes(std::span<const std::uint8_t> bytes);
  void put_raw(std::string_view text);
  // Length-prefixed strings; throws if the text does not fit the prefix.
  void put_string_u8(std::string_view text);
  void put_string_u16(std::string_view text);
  void put_string_u32(std::string_view text);

  const std::vector<std::uint8_t>& bytes() const { return buf_; }
  std::vector<std::uint8_t> take() { return std::move(buf_); }

 private:
  std::vector<std::uint8_t> buf_;
};

// Bounds-checked little-endian decoder. Every read past the end throws
// IntegrityError naming `what`.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes, std::string context = "buffer")
      : bytes_(bytes), context_(std::move(context)) {}

  std::uint8_t u8(std::string_view what);
  std::uint16_t u16(std::string_view what);
  std::uint32_t u32(std::string_view what);
  std::int32_t i32(std::string_view what) { return static_cast<std::int32_t>(u32(what)); }
  std::uint64_t u64(std::string_view what);
  float f32(std::string_view what);
  void f32s(std::span<float> out, std::string_view what);
  std::span<const std::uint8_t> bytes(std::size_t n, std::string_view what);
  std::string raw(std::size_t n, std::string_view what);
  std::string string_u8(std::string_view what);
  std::string string_u16(std::string_view what);
  std::string string_u32(std::string_view what);

  std::size_t offset() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  bool at_end() const { return pos_ == bytes_.size(); }

 private:
  void require(std::size_t n, std::string_view what) const;

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
  std::string context_;
};

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
std::string read_file_text(const std::filesystem::path& path);
void write_file_text(const std::filesystem::path& path, std::string_view text);

}  // namespace lyricnet
