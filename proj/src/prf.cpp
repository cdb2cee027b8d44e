#include "idkit/prf.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <vector>

#include "idkit/errors.hpp"

namespace idkit {

// ---------------------------------------------------------------------------
// SHA-256 (FIPS 180-4), one-shot.

namespace {

constexpr std::uint32_t kSha256K[64] = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
    0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
    0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
    0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
    0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
    0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
    0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
    0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

inline std::uint32_t rotr(std::uint32_t x, int n) {
  return std::rotr(x, n);
}

void sha256_compress(std::uint32_t state[8], const std::uint8_t block[64]) {
  std::uint32_t w[64];
  for (int i = 0; i < 16; ++i) {
    w[i] = (std::uint32_t(block[4 * i]) << 24) |
           (std::uint32_t(block[4 * i + 1]) << 16) |
           (std::uint32_t(block[4 * i + 2]) << 8) |
           std::uint32_t(block[4 * i + 3]);
  }
  for (int i = 16; i < 64; ++i) {
    const std::uint32_t s0 =
        rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
    const std::uint32_t s1 =
        rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
    w[i] = w[i - 16] + s0 + w[i - 7] + s1;
  }
  std::uint32_t a = state[0], b = state[1], c = state[2], d = state[3];
  std::uint32_t e = state[4], f = state[5], g = state[6], h = state[7];
  for (int i = 0; i < 64; ++i) {
    const std::uint32_t S1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
    const std::uint32_t ch = (e & f) ^ (~e & g);
    const std::uint32_t t1 = h + S1 + ch + kSha256K[i] + w[i];
    const std::uint32_t S0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
    const std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
    const std::uint32_t t2 = S0 + maj;
    h = g;
    g = f;
    f = e;
    e = d + t1;
    d = c;
    c = b;
    b = a;
    a = t1 + t2;
  }
  state[0] += a;
  state[1] += b;
  state[2] += c;
  state[3] += d;
  state[4] += e;
  state[5] += f;
  state[6] += g;
  state[7] += h;
}

}  // namespace

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data) {
  std::uint32_t state[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                            0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
  std::size_t off = 0;
  while (data.size() - off >= 64) {
    sha256_compress(state, data.data() + off);
    off += 64;
  }
  std::uint8_t tail[128] = {0};
  const std::size_t rest = data.size() - off;
  std::memcpy(tail, data.data() + off, rest);
  tail[rest] = 0x80;
  const std::size_t tail_len = (rest + 1 + 8 <= 64) ? 64 : 128;
  const std::uint64_t bit_len = std::uint64_t(data.size()) * 8;
  for (int i = 0; i < 8; ++i) {
    tail[tail_len - 1 - i] =
        static_cast<std::uint8_t>((bit_len >> (8 * i)) & 0xFF);
  }
  sha256_compress(state, tail);
  if (tail_len == 128) sha256_compress(state, tail + 64);

  std::array<std::uint8_t, 32> out{};
  for (int i = 0; i < 8; ++i) {
    out[4 * i] = static_cast<std::uint8_t>(state[i] >> 24);
    out[4 * i + 1] = static_cast<std::uint8_t>(state[i] >> 16);
    out[4 * i + 2] = static_cast<std::uint8_t>(state[i] >> 8);
    out[4 * i + 3] = static_cast<std::uint8_t>(state[i]);
  }
  return out;
}

std::array<std::uint8_t, 32> derive_key(
    std::string_view label,
    std::initializer_list<std::span<const std::uint8_t>> parts) {
  std::vector<std::uint8_t> buf;
  buf.reserve(label.size() + 1 + 64);
  buf.insert(buf.end(), label.begin(), label.end());
  buf.push_back(0);
  for (const auto& part : parts)
    buf.insert(buf.end(), part.begin(), part.end());
  return sha256(buf);
}

std::array<std::uint8_t, 12> make_nonce(std::uint32_t domain,
                                        std::uint64_t index) {
  std::array<std::uint8_t, 12> out{};
  for (int i = 0; i < 4; ++i)
    out[i] = static_cast<std::uint8_t>(domain >> (24 - 8 * i));
  for (int i = 0; i < 8; ++i)
    out[4 + i] = static_cast<std::uint8_t>(index >> (56 - 8 * i));
  return out;
}

// ---------------------------------------------------------------------------
// ChaCha20 (RFC 8439 layout: 32-bit counter, 96-bit nonce).

namespace {

inline void quarter_round(std::uint32_t& a, std::uint32_t& b,
                          std::uint32_t& c, std::uint32_t& d) {
  a += b;
  d = std::rotl(d ^ a, 16);
  c += d;
  b = std::rotl(b ^ c, 12);
  a += b;
  d = std::rotl(d ^ a, 8);
  c += d;
  b = std::rotl(b ^ c, 7);
}

inline std::uint32_t load_le32(const std::uint8_t* p) {
  return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) |
         (std::uint32_t(p[2]) << 16) | (std::uint32_t(p[3]) << 24);
}

}  // namespace

void chacha20_block(const std::array<std::uint8_t, 32>& key,
                    std::uint32_t counter,
                    const std::array<std::uint8_t, 12>& nonce,
                    std::span<std::uint8_t, 64> out) {
  std::uint32_t s[16];
  s[0] = 0x61707865;
  s[1] = 0x3320646e;
  s[2] = 0x79622d32;
  s[3] = 0x6b206574;
  for (int i = 0; i < 8; ++i) s[4 + i] = load_le32(key.data() + 4 * i);
  s[12] = counter;
  for (int i = 0; i < 3; ++i) s[13 + i] = load_le32(nonce.data() + 4 * i);

  std::uint32_t x[16];
  std::memcpy(x, s, sizeof(x));
  for (int round = 0; round < 10; ++round) {
    quarter_round(x[0], x[4], x[8], x[12]);
    quarter_round(x[1], x[5], x[9], x[13]);
    quarter_round(x[2], x[6], x[10], x[14]);
    quarter_round(x[3], x[7], x[11], x[15]);
    quarter_round(x[0], x[5], x[10], x[15]);
    quarter_round(x[1], x[6], x[11], x[12]);
    quarter_round(x[2], x[7], x[8], x[13]);
    quarter_round(x[3], x[4], x[9], x[14]);
  }
  for (int i = 0; i < 16; ++i) {
    const std::uint32_t v = x[i] + s[i];
    out[4 * i] = static_cast<std::uint8_t>(v);
    out[4 * i + 1] = static_cast<std::uint8_t>(v >> 8);
    out[4 * i + 2] = static_cast<std::uint8_t>(v >> 16);
    out[4 * i + 3] = static_cast<std::uint8_t>(v >> 24);
  }
}

ChaChaStream::ChaChaStream(const std::array<std::uint8_t, 32>& key,
                           const std::array<std::uint8_t, 12>& nonce,
                           std::uint32_t counter)
    : key_(key), nonce_(nonce), counter_(counter) {}

void ChaChaStream::refill() {
  chacha20_block(key_, counter_, nonce_, block_);
  ++counter_;
  used_ = 0;
}

void ChaChaStream::fill(std::span<std::uint8_t> out) {
  std::size_t off = 0;
  while (off < out.size()) {
    if (used_ == 64) refill();
    const std::size_t take =
        std::min<std::size_t>(64 - used_, out.size() - off);
    std::memcpy(out.data() + off, block_.data() + used_, take);
    used_ += static_cast<unsigned>(take);
    off += take;
  }
}

// ---------------------------------------------------------------------------
// RandomSource helpers.

std::uint8_t RandomSource::next_byte() {
  std::uint8_t b;
  fill({&b, 1});
  return b;
}

std::uint64_t RandomSource::next_u64() {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | next_byte();
  return v;
}

std::uint64_t RandomSource::uniform(std::uint64_t bound) {
  if (bound == 0) throw ParamError("uniform bound must be positive");
  if (bound == 1) return 0;
  // Accept r only below the largest multiple of bound, so every residue is
  // equally likely.
  const std::uint64_t rem = (0 - bound) % bound;  // 2^64 mod bound
  const std::uint64_t limit = 0 - rem;            // largest multiple of bound
  std::uint64_t r;
  do {
    r = next_u64();
  } while (rem != 0 && r >= limit);
  return r % bound;
}

std::uint32_t RandomSource::next_bits(unsigned bits) {
  if (bits == 0 || bits > 32) throw ParamError("bit chunk must be 1..32");
  while (bit_count_ < bits) {
    bit_buf_ = (bit_buf_ << 8) | next_byte();
    bit_count_ += 8;
  }
  const std::uint32_t out = static_cast<std::uint32_t>(
      (bit_buf_ >> (bit_count_ - bits)) &
      ((bits == 32) ? 0xFFFFFFFFull : ((1ull << bits) - 1)));
  bit_count_ -= bits;
  return out;
}

void SystemRandom::fill(std::span<std::uint8_t> out) {
  for (auto& b : out)
    b = static_cast<std::uint8_t>(dev_() & 0xFF);
}

SeededRandom::SeededRandom(std::span<const std::uint8_t> seed,
                           std::string_view label)
    : stream_(derive_key(label, {seed}), std::array<std::uint8_t, 12>{}) {}

SeededRandom::SeededRandom(const std::array<std::uint8_t, 32>& key,
                           const std::array<std::uint8_t, 12>& nonce)
    : stream_(key, nonce) {}

void SeededRandom::fill(std::span<std::uint8_t> out) { stream_.fill(out); }

}  // namespace idkit
