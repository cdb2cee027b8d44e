#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace idkit {

// Packs values MSB-first into a contiguous bit string. The final byte is
// zero-padded on the right; nothing else is padded.
class BitWriter {
 public:
  void put(std::uint64_t value, unsigned bits);
  void put_bytes(std::span<const std::uint8_t> bytes);

  std::size_t bit_size() const { return bit_size_; }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bit_size_ = 0;
};

// Reads MSB-first bit chunks out of a byte buffer.
class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint64_t get(unsigned bits);
  std::size_t bits_left() const { return bytes_.size() * 8 - pos_; }
  // True when every unread bit is zero (used for pad checks).
  bool remainder_is_zero() const;

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(std::string_view hex);

std::array<std::uint8_t, 8> u64_be(std::uint64_t v);

}  // namespace idkit
