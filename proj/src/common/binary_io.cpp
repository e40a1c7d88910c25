#include "lyricnet/binary_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "lyricnet/errors.hpp"

namespace lyricnet {

void ByteWriter::put_u16(std::uint16_t v) {
  put_u8(static_cast<std::uint8_t>(v));
  put_u8(static_cast<std::uint8_t>(v >> 8));
}

void ByteWriter::put_u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) put_u8(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::put_u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) put_u8(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::put_f32(float v) { put_u32(std::bit_cast<std::uint32_t>(v)); }

void ByteWriter::put_f32s(std::span<const float> values) {
  buf_.reserve(buf_.size() + values.size() * 4);
  for (float v : values) put_f32(v);
}

void ByteWriter::put_bytes(std::span<const std::uint8_t> bytes) {
  buf_.insert(buf_.end(), bytes.begin(), bytes.end());
}

void ByteWriter::put_raw(std::string_view text) { buf_.insert(buf_.end(), text.begin(), text.end()); }

void ByteWriter::put_string_u8(std::string_view text) {
  if (text.size() > std::numeric_limits<std::uint8_t>::max()) {
    throw DataError("string too long for u8 length prefix: " + std::string(text.substr(0, 32)));
  }
  put_u8(static_cast<std::uint8_t>(text.size()));
  put_raw(text);
}

void ByteWriter::put_string_u16(std::string_view text) {
  if (text.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw DataError("string too long for u16 length prefix");
  }
  put_u16(static_cast<std::uint16_t>(text.size()));
  put_raw(text);
}

void ByteWriter::put_string_u32(std::string_view text) {
  put_u32(static_cast<std::uint32_t>(text.size()));
  put_raw(text);
}

void ByteReader::require(std::size_t n, std::string_view what) const {
  if (n > remaining()) {
    throw IntegrityError(context_ + ": truncated while reading " + std::string(what) + " at offset " +
                         std::to_string(pos_));
  }
}

std::uint8_t ByteReader::u8(std::string_view what) {
  require(1, what);
  return bytes_[pos_++];
}

std::uint16_t ByteReader::u16(std::string_view what) {
  require(2, what);
  std::uint16_t v = static_cast<std::uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
  pos_ += 2;
  return v;
}

std::uint32_t ByteReader::u32(std::string_view what) {
  require(4, what);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
  pos_ += 4;
  return v;
}

std::uint64_t ByteReader::u64(std::string_view what) {
  require(8, what);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
  pos_ += 8;
  return v;
}

float ByteReader::f32(std::string_view what) { return std::bit_cast<float>(u32(what)); }

void ByteReader::f32s(std::span<float> out, std::string_view what) {
  require(out.size() * 4, what);
  for (float& v : out) v = f32(what);
}

std::span<const std::uint8_t> ByteReader::bytes(std::size_t n, std::string_view what) {
  require(n, what);
  auto s = bytes_.subspan(pos_, n);
  pos_ += n;
  return s;
}

std::string ByteReader::raw(std::size_t n, std::string_view what) {
  auto s = bytes(n, what);
  return std::string(s.begin(), s.end());
}

std::string ByteReader::string_u8(std::string_view what) { return raw(u8(what), what); }
std::string ByteReader::string_u16(std::string_view what) { return raw(u16(what), what); }
std::string ByteReader::string_u32(std::string_view what) { return raw(u32(what), what); }

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed: " + path.string());
}

std::string read_file_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace lyricnet
