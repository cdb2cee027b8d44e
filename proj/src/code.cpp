#include "idkit/code.hpp"

#include <cmath>
#include <string>

#include "idkit/bounds.hpp"

namespace idkit {

namespace {

constexpr std::uint32_t kColumnDomain = 0x636f6c00;  // "col\0"

void check_message(const CodeSpec& spec, const FieldVector& u,
                   const char* who) {
  if (&u.field() != &spec.field())
    throw FieldMismatchError(std::string(who) +
                             ": message field does not match the code");
  if (u.size() != spec.k())
    throw ParamError(std::string(who) + ": message length must equal k");
}

}  // namespace

CodeSpec::CodeSpec(const Field& field, std::uint32_t k, std::uint64_t n,
                   std::span<const std::uint8_t> key)
    : field_(&field), k_(k), n_(n), key_(key.begin(), key.end()) {
  if (k == 0) throw ParamError("k must be positive");
  if (k > 0xFFFF) throw ParamError("k must fit 16 bits");
  if (n == 0) throw ParamError("n must be positive");
  if (n > 0xFFFFFFFFull) throw ParamError("n must fit 32 bits");
  const std::uint8_t m_byte = static_cast<std::uint8_t>(field.m());
  column_key_ = derive_key("idkit.code.column.v1", {{&m_byte, 1}, key_});
}

FieldVector derive_column(const CodeSpec& spec, std::uint64_t index) {
  if (index >= spec.n()) throw ParamError("column index out of range");
  SeededRandom rng(spec.column_key(), make_nonce(kColumnDomain, index));
  return random_vector(spec.field(), spec.k(), rng);
}

std::uint32_t compute_tag(const CodeSpec& spec, const FieldVector& u,
                          std::uint64_t index) {
  check_message(spec, u, "compute_tag");
  return dot(u, derive_column(spec, index));
}

CodeIdentWord send(const CodeSpec& spec, const FieldVector& u,
                   std::uint32_t ell, RandomSource& rng) {
  check_message(spec, u, "send");
  if (ell == 0) throw ParamError("send: ell must be positive");
  CodeIdentWord word;
  word.indices.reserve(ell);
  word.tags.reserve(ell);
  for (std::uint32_t j = 0; j < ell; ++j) {
    const std::uint64_t index = rng.uniform(spec.n());
    word.indices.push_back(index);
    word.tags.push_back(compute_tag(spec, u, index));
  }
  return word;
}

VerifyResult verify(const CodeSpec& spec, const FieldVector& expected,
                    const CodeIdentWord& word) {
  check_message(spec, expected, "verify");
  if (word.indices.size() != word.tags.size())
    return VerifyResult::reject_malformed("index/tag count mismatch");
  if (word.indices.empty())
    return VerifyResult::reject_malformed("empty word");
  for (std::size_t j = 0; j < word.indices.size(); ++j) {
    if (word.indices[j] >= spec.n())
      return VerifyResult::reject_malformed(
          "index " + std::to_string(word.indices[j]) + " out of range");
    if (word.tags[j] >= spec.field().q())
      return VerifyResult::reject_malformed("tag outside the field");
  }
  for (std::size_t j = 0; j < word.indices.size(); ++j) {
    if (compute_tag(spec, expected, word.indices[j]) != word.tags[j])
      return VerifyResult::reject_tags("tag mismatch at position " +
                                       std::to_string(j));
  }
  return VerifyResult::accept();
}

double ident_rate_code(const Field& field, std::uint64_t k, std::uint64_t n) {
  if (n < 2) throw ParamError("ident_rate_code: n must be at least 2");
  const double word_bits = std::log2(static_cast<double>(n)) + field.m();
  return ident_rate_from_bits(k, field.q(), word_bits);
}

}  // namespace idkit
