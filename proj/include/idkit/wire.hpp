#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "idkit/code.hpp"
#include "idkit/prng_ident.hpp"

namespace idkit {

// Canonical byte layout, integers big-endian, payload bit-packed MSB-first
// and zero-padded to the next byte boundary only at the very end:
//
//   version  u8 = 1
//   scheme   u8   0x01 code | 0x02 prng
//   field_m  u8   1..16
//   code: k u16 | n u32 | ell u8 | ell x (index u32, tag m bits)
//   prng: k u16 | ell u8 | mu u16 | generator u8 | mu seed syms | ell tags
inline constexpr std::uint8_t kWireVersion = 1;

enum class SchemeTag : std::uint8_t { code = 0x01, prng = 0x02 };

struct CodeWireWord {
  std::uint8_t m = 0;
  std::uint16_t k = 0;
  std::uint32_t n = 0;
  CodeIdentWord word;  // ell = word.indices.size()
};

struct PrngWireWord {
  std::uint8_t m = 0;
  std::uint16_t k = 0;
  std::uint8_t ell = 0;
  std::uint16_t mu = 0;
  Generator generator = Generator::nonlinear_default;
  std::vector<std::uint32_t> seed;
  std::vector<std::uint32_t> tags;
};

using WireWord = std::variant<CodeWireWord, PrngWireWord>;

std::vector<std::uint8_t> encode_word(const CodeWireWord& w);
std::vector<std::uint8_t> encode_word(const PrngWireWord& w);
std::vector<std::uint8_t> encode_word(const WireWord& w);

// Strict decoder: exact length, version/scheme/field checks, indices < n,
// zero pad. Throws WireFormatError with the failing check in reason().
WireWord decode_word(std::span<const std::uint8_t> bytes);

// Helpers binding wire structs to scheme objects.
CodeWireWord to_wire(const CodeSpec& spec, const CodeIdentWord& word);
PrngWireWord to_wire(const PrngScheme& scheme, const PrngIdentWord& word);

// Label -> identity table. File format: one `label hex` pair per line,
// where hex is the bit-packed message; blank lines and lines starting with
// '#' are skipped.
class Registry {
 public:
  Registry(const Field& field, std::uint32_t k);

  const Field& field() const { return *field_; }
  std::uint32_t k() const { return k_; }
  std::size_t size() const { return entries_.size(); }

  void add(std::string label, FieldVector u);
  const FieldVector* find(std::string_view label) const;
  const std::map<std::string, FieldVector, std::less<>>& entries() const {
    return entries_;
  }

  static Registry load(const Field& field, std::uint32_t k,
                       const std::string& path);
  void save(const std::string& path) const;

 private:
  const Field* field_;
  std::uint32_t k_;
  std::map<std::string, FieldVector, std::less<>> entries_;
};

}  // namespace idkit
