#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace lyricnet {

using Digest = std::array<std::uint8_t, 32>;

// Incremental SHA-256 (OpenSSL backed).
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  Sha256& update(std::span<const std::uint8_t> bytes);
  Sha256& update(std::string_view text);
  Digest finish();

 private:
  void* ctx_;
};

Digest sha256(std::span<const std::uint8_t> bytes);
Digest sha256(std::string_view text);
std::string to_hex(const Digest& digest);

// Derives a component seed from the root seed and a stable label so that
// adding a new component never shifts the random stream of another.
std::uint64_t derive_seed(std::uint64_t root, std::string_view label);

}  // namespace lyricnet
