#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "idkit/errors.hpp"

namespace idkit {

class RandomSource;

// GF(2^m), 1 <= m <= 16. The reduction polynomial is pinned per m: the least
// bit mask with nonzero constant term that is irreducible over GF(2) (for
// m=8 that is x^8+x^4+x^3+x+1, mask 0x11B). Instances are immutable
// process-wide singletons; multiplication runs on log/antilog tables built
// once at first use.
class Field {
 public:
  static const Field& get(int m);

  int m() const { return m_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t reduction_poly() const { return poly_; }
  std::uint32_t generator() const { return generator_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return a ^ b; }
  std::uint32_t neg(std::uint32_t a) const { return a; }  // characteristic 2
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

 private:
  explicit Field(int m);

  int m_;
  std::uint32_t q_;
  std::uint32_t poly_;
  std::uint32_t generator_;
  std::vector<std::uint16_t> log_;
  std::vector<std::uint16_t> exp_;  // doubled so mul skips the mod
};

// Polynomial over GF(2) given as a bit mask; exhaustive trial division.
bool is_irreducible_gf2(std::uint32_t poly_mask);

// A single field element tagged with its field; ops check the tags match.
struct FieldElement {
  const Field* field;
  std::uint32_t value;
};

FieldElement element(const Field& f, std::uint32_t value);
FieldElement add(FieldElement a, FieldElement b);
FieldElement mul(FieldElement a, FieldElement b);
inline bool operator==(FieldElement a, FieldElement b) {
  return a.field == b.field && a.value == b.value;
}

// Fixed-length vector over one field. Construction and set() validate that
// every entry is a field element, so downstream code can trust the values.
class FieldVector {
 public:
  FieldVector(const Field& field, std::size_t len)
      : field_(&field), values_(len, 0) {}
  FieldVector(const Field& field, std::vector<std::uint32_t> values);

  const Field& field() const { return *field_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  std::uint32_t operator[](std::size_t i) const { return values_[i]; }
  void set(std::size_t i, std::uint32_t value);
  std::span<const std::uint32_t> values() const { return values_; }
  bool is_zero() const;

  friend bool operator==(const FieldVector& a, const FieldVector& b) {
    return a.field_ == b.field_ && a.values_ == b.values_;
  }

 private:
  const Field* field_;
  std::vector<std::uint32_t> values_;
};

std::uint32_t dot(const FieldVector& a, const FieldVector& b);
FieldVector add(const FieldVector& a, const FieldVector& b);

// Bit packing: each symbol occupies exactly m bits, MSB-first, with the last
// byte zero-padded. unpack_symbols() demands the exact byte length and a
// zero pad.
std::vector<std::uint8_t> pack_symbols(const FieldVector& v);
FieldVector unpack_symbols(const Field& field, std::size_t count,
                           std::span<const std::uint8_t> bytes);

// Uniform symbol via rejection sampling on m-bit chunks of the source.
std::uint32_t draw_symbol(const Field& field, RandomSource& rng);
FieldVector random_vector(const Field& field, std::size_t len,
                          RandomSource& rng);

}  // namespace idkit
