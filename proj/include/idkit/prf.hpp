#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string_view>

namespace idkit {

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data);

// SHA-256 over label || 0x00 || part_0 || part_1 || ... Every derived key in
// the toolkit goes through this so the domain separation stays in one place.
std::array<std::uint8_t, 32> derive_key(
    std::string_view label,
    std::initializer_list<std::span<const std::uint8_t>> parts);

// 12-byte nonce: 4-byte domain tag (big-endian) followed by a 64-bit
// big-endian index. One domain tag per use site keeps streams disjoint.
std::array<std::uint8_t, 12> make_nonce(std::uint32_t domain,
                                        std::uint64_t index);

void chacha20_block(const std::array<std::uint8_t, 32>& key,
                    std::uint32_t counter,
                    const std::array<std::uint8_t, 12>& nonce,
                    std::span<std::uint8_t, 64> out);

// Counter-mode ChaCha20 keystream, seekable only by construction point.
class ChaChaStream {
 public:
  ChaChaStream(const std::array<std::uint8_t, 32>& key,
               const std::array<std::uint8_t, 12>& nonce,
               std::uint32_t counter = 0);

  void fill(std::span<std::uint8_t> out);

 private:
  void refill();

  std::array<std::uint8_t, 32> key_;
  std::array<std::uint8_t, 12> nonce_;
  std::uint32_t counter_;
  std::array<std::uint8_t, 64> block_;
  unsigned used_ = 64;
};

// Byte stream with unbiased integer and bit-chunk draws layered on top.
// next_byte() is the primitive; every helper consumes whole bytes from it in
// call order, so a fixed call sequence reads a fixed stream prefix.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  std::uint8_t next_byte();
  std::uint64_t next_u64();  // eight stream bytes, big-endian
  // Uniform draw from [0, bound) by rejection sampling (no modulo bias).
  std::uint64_t uniform(std::uint64_t bound);
  // MSB-first chunks of the byte stream, 1 <= bits <= 32. Whole bytes are
  // buffered; leftover bits carry over to the next call.
  std::uint32_t next_bits(unsigned bits);

 private:
  std::uint64_t bit_buf_ = 0;
  unsigned bit_count_ = 0;
};

// Non-deterministic source backed by std::random_device.
class SystemRandom final : public RandomSource {
 public:
  void fill(std::span<std::uint8_t> out) override;

 private:
  std::random_device dev_;
};

// Deterministic source: ChaCha20 keyed either by a hashed seed or directly.
class SeededRandom final : public RandomSource {
 public:
  SeededRandom(std::span<const std::uint8_t> seed, std::string_view label);
  SeededRandom(const std::array<std::uint8_t, 32>& key,
               const std::array<std::uint8_t, 12>& nonce);

  void fill(std::span<std::uint8_t> out) override;

 private:
  ChaChaStream stream_;
};

}  // namespace idkit
