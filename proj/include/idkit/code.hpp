#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "idkit/gf.hpp"
#include "idkit/prf.hpp"
#include "idkit/verify.hpp"

namespace idkit {

// Identification via a random linear code over GF(q). A message is a vector
// u in GF(q)^k; the sender transmits ell pairs (i, dot(u, g_i)) where g_i is
// the i-th column of a k x n generator matrix derived on the fly from a
// shared key. Columns never exist as a whole matrix; derive_column(i) is a
// pure function of (key, i).
class CodeSpec {
 public:
  CodeSpec(const Field& field, std::uint32_t k, std::uint64_t n,
           std::span<const std::uint8_t> key);

  const Field& field() const { return *field_; }
  std::uint32_t k() const { return k_; }
  std::uint64_t n() const { return n_; }
  std::span<const std::uint8_t> key() const { return key_; }
  const std::array<std::uint8_t, 32>& column_key() const {
    return column_key_;
  }

 private:
  const Field* field_;
  std::uint32_t k_;
  std::uint64_t n_;
  std::vector<std::uint8_t> key_;
  std::array<std::uint8_t, 32> column_key_;
};

FieldVector derive_column(const CodeSpec& spec, std::uint64_t index);
std::uint32_t compute_tag(const CodeSpec& spec, const FieldVector& u,
                          std::uint64_t index);

// One transmitted word: ell (index, tag) pairs, positions aligned.
struct CodeIdentWord {
  std::vector<std::uint64_t> indices;
  std::vector<std::uint32_t> tags;
};

// Samples ell column indices uniformly (with replacement) and tags each.
CodeIdentWord send(const CodeSpec& spec, const FieldVector& u,
                   std::uint32_t ell, RandomSource& rng);

// Recomputes every tag against `expected` and accepts only on full match.
VerifyResult verify(const CodeSpec& spec, const FieldVector& expected,
                    const CodeIdentWord& word);

// Identification rate of a single word: bits of identity resolved per
// transmitted bit, (log2 k + log2 log2 q) / (log2 n + log2 q).
double ident_rate_code(const Field& field, std::uint64_t k, std::uint64_t n);

}  // namespace idkit
