#include "idkit/bits.hpp"

#include <cctype>

#include "idkit/errors.hpp"

namespace idkit {

void BitWriter::put(std::uint64_t value, unsigned bits) {
  if (bits == 0 || bits > 64) throw ParamError("bit width must be 1..64");
  if (bits < 64 && (value >> bits) != 0)
    throw ParamError("value does not fit the declared bit width");
  for (unsigned i = bits; i-- > 0;) {
    if (bit_size_ % 8 == 0) bytes_.push_back(0);
    const unsigned bit = static_cast<unsigned>((value >> i) & 1u);
    bytes_.back() |=
        static_cast<std::uint8_t>(bit << (7 - (bit_size_ % 8)));
    ++bit_size_;
  }
}

void BitWriter::put_bytes(std::span<const std::uint8_t> bytes) {
  for (std::uint8_t b : bytes) put(b, 8);
}

std::uint64_t BitReader::get(unsigned bits) {
  if (bits == 0 || bits > 64) throw ParamError("bit width must be 1..64");
  if (bits > bits_left()) throw ParamError("bit reader: out of data");
  std::uint64_t out = 0;
  for (unsigned i = 0; i < bits; ++i) {
    const std::uint8_t byte = bytes_[pos_ / 8];
    const unsigned bit = (byte >> (7 - (pos_ % 8))) & 1u;
    out = (out << 1) | bit;
    ++pos_;
  }
  return out;
}

bool BitReader::remainder_is_zero() const {
  for (std::size_t p = pos_; p < bytes_.size() * 8; ++p) {
    if ((bytes_[p / 8] >> (7 - (p % 8))) & 1u) return false;
  }
  return true;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xF]);
  }
  return out;
}

namespace {
int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

std::vector<std::uint8_t> from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0)
    throw ParamError("hex string must have even length");
  std::vector<std::uint8_t> out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    const int hi = hex_nibble(hex[i]);
    const int lo = hex_nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) throw ParamError("invalid hex digit");
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

std::array<std::uint8_t, 8> u64_be(std::uint64_t v) {
  std::array<std::uint8_t, 8> out{};
  for (int i = 7; i >= 0; --i) {
    out[i] = static_cast<std::uint8_t>(v & 0xFF);
    v >>= 8;
  }
  return out;
}

}  // namespace idkit
