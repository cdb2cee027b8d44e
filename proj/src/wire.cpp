#include "idkit/wire.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "idkit/bits.hpp"

namespace idkit {

namespace {

[[noreturn]] void fail(WireError reason, const std::string& what) {
  throw WireFormatError(reason, what);
}

void append_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

}  // namespace

std::vector<std::uint8_t> encode_word(const CodeWireWord& w) {
  if (w.m < 1 || w.m > 16) throw ParamError("encode: field degree 1..16");
  const std::uint32_t q = 1u << w.m;
  if (w.k == 0) throw ParamError("encode: k must be positive");
  if (w.n == 0) throw ParamError("encode: n must be positive");
  const std::size_t ell = w.word.indices.size();
  if (ell == 0 || ell > 0xFF)
    throw ParamError("encode: word must carry 1..255 pairs");
  if (w.word.tags.size() != ell)
    throw ParamError("encode: index/tag count mismatch");

  std::vector<std::uint8_t> out;
  out.push_back(kWireVersion);
  out.push_back(static_cast<std::uint8_t>(SchemeTag::code));
  out.push_back(w.m);
  append_u16(out, w.k);
  append_u32(out, w.n);
  out.push_back(static_cast<std::uint8_t>(ell));

  BitWriter bits;
  for (std::size_t j = 0; j < ell; ++j) {
    if (w.word.indices[j] >= w.n) throw ParamError("encode: index >= n");
    if (w.word.tags[j] >= q) throw ParamError("encode: tag outside field");
    bits.put(w.word.indices[j], 32);
    bits.put(w.word.tags[j], w.m);
  }
  const auto payload = bits.take();
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

std::vector<std::uint8_t> encode_word(const PrngWireWord& w) {
  if (w.m < 1 || w.m > 16) throw ParamError("encode: field degree 1..16");
  const std::uint32_t q = 1u << w.m;
  if (w.k == 0) throw ParamError("encode: k must be positive");
  if (w.ell == 0) throw ParamError("encode: ell must be positive");
  if (w.mu == 0) throw ParamError("encode: mu must be positive");
  if (w.generator != Generator::nonlinear_default &&
      w.generator != Generator::lfsr)
    throw ParamError("encode: unknown generator");
  if (w.seed.size() != w.mu) throw ParamError("encode: seed length != mu");
  if (w.tags.size() != w.ell) throw ParamError("encode: tag count != ell");

  std::vector<std::uint8_t> out;
  out.push_back(kWireVersion);
  out.push_back(static_cast<std::uint8_t>(SchemeTag::prng));
  out.push_back(w.m);
  append_u16(out, w.k);
  out.push_back(w.ell);
  append_u16(out, w.mu);
  out.push_back(static_cast<std::uint8_t>(w.generator));

  BitWriter bits;
  for (std::uint32_t s : w.seed) {
    if (s >= q) throw ParamError("encode: seed symbol outside field");
    bits.put(s, w.m);
  }
  for (std::uint32_t t : w.tags) {
    if (t >= q) throw ParamError("encode: tag outside field");
    bits.put(t, w.m);
  }
  const auto payload = bits.take();
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

std::vector<std::uint8_t> encode_word(const WireWord& w) {
  if (const auto* c = std::get_if<CodeWireWord>(&w)) return encode_word(*c);
  return encode_word(std::get<PrngWireWord>(w));
}

WireWord decode_word(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 3) fail(WireError::truncated, "header truncated");
  if (bytes[0] != kWireVersion)
    fail(WireError::bad_version,
         "unsupported version " + std::to_string(bytes[0]));
  const std::uint8_t scheme = bytes[1];
  if (scheme != static_cast<std::uint8_t>(SchemeTag::code) &&
      scheme != static_cast<std::uint8_t>(SchemeTag::prng))
    fail(WireError::bad_scheme,
         "unknown scheme tag " + std::to_string(scheme));
  const std::uint8_t m = bytes[2];
  if (m < 1 || m > 16)
    fail(WireError::bad_field, "field degree " + std::to_string(m));

  if (scheme == static_cast<std::uint8_t>(SchemeTag::code)) {
    if (bytes.size() < 10) fail(WireError::truncated, "code header truncated");
    const std::uint16_t k =
        static_cast<std::uint16_t>((bytes[3] << 8) | bytes[4]);
    const std::uint32_t n = (std::uint32_t(bytes[5]) << 24) |
                            (std::uint32_t(bytes[6]) << 16) |
                            (std::uint32_t(bytes[7]) << 8) |
                            std::uint32_t(bytes[8]);
    const std::uint8_t ell = bytes[9];
    if (k == 0) fail(WireError::bad_params, "k = 0");
    if (n == 0) fail(WireError::bad_params, "n = 0");
    if (ell == 0) fail(WireError::bad_params, "ell = 0");

    const std::size_t payload_bits = std::size_t(ell) * (32 + m);
    const std::size_t payload_bytes = (payload_bits + 7) / 8;
    const std::size_t have = bytes.size() - 10;
    if (have < payload_bytes) fail(WireError::truncated, "payload truncated");
    if (have > payload_bytes)
      fail(WireError::trailing_data, "bytes after payload");

    BitReader r(bytes.subspan(10));
    CodeWireWord out;
    out.m = m;
    out.k = k;
    out.n = n;
    out.word.indices.reserve(ell);
    out.word.tags.reserve(ell);
    for (std::uint32_t j = 0; j < ell; ++j) {
      const std::uint64_t index = r.get(32);
      if (index >= n)
        fail(WireError::bad_index,
             "index " + std::to_string(index) + " >= n");
      out.word.indices.push_back(index);
      out.word.tags.push_back(static_cast<std::uint32_t>(r.get(m)));
    }
    if (!r.remainder_is_zero()) fail(WireError::bad_pad, "nonzero padding");
    return out;
  }

  if (bytes.size() < 9) fail(WireError::truncated, "prng header truncated");
  const std::uint16_t k =
      static_cast<std::uint16_t>((bytes[3] << 8) | bytes[4]);
  const std::uint8_t ell = bytes[5];
  const std::uint16_t mu =
      static_cast<std::uint16_t>((bytes[6] << 8) | bytes[7]);
  const std::uint8_t gen = bytes[8];
  if (k == 0) fail(WireError::bad_params, "k = 0");
  if (ell == 0) fail(WireError::bad_params, "ell = 0");
  if (mu == 0) fail(WireError::bad_params, "mu = 0");
  if (gen != static_cast<std::uint8_t>(Generator::nonlinear_default) &&
      gen != static_cast<std::uint8_t>(Generator::lfsr))
    fail(WireError::bad_params, "unknown generator " + std::to_string(gen));

  const std::size_t payload_bits = (std::size_t(mu) + ell) * m;
  const std::size_t payload_bytes = (payload_bits + 7) / 8;
  const std::size_t have = bytes.size() - 9;
  if (have < payload_bytes) fail(WireError::truncated, "payload truncated");
  if (have > payload_bytes)
    fail(WireError::trailing_data, "bytes after payload");

  BitReader r(bytes.subspan(9));
  PrngWireWord out;
  out.m = m;
  out.k = k;
  out.ell = ell;
  out.mu = mu;
  out.generator = static_cast<Generator>(gen);
  out.seed.reserve(mu);
  out.tags.reserve(ell);
  for (std::uint32_t i = 0; i < mu; ++i)
    out.seed.push_back(static_cast<std::uint32_t>(r.get(m)));
  for (std::uint32_t j = 0; j < ell; ++j)
    out.tags.push_back(static_cast<std::uint32_t>(r.get(m)));
  if (!r.remainder_is_zero()) fail(WireError::bad_pad, "nonzero padding");
  return out;
}

CodeWireWord to_wire(const CodeSpec& spec, const CodeIdentWord& word) {
  CodeWireWord out;
  out.m = static_cast<std::uint8_t>(spec.field().m());
  out.k = static_cast<std::uint16_t>(spec.k());
  out.n = static_cast<std::uint32_t>(spec.n());
  out.word = word;
  return out;
}

PrngWireWord to_wire(const PrngScheme& scheme, const PrngIdentWord& word) {
  PrngWireWord out;
  out.m = static_cast<std::uint8_t>(scheme.field().m());
  out.k = static_cast<std::uint16_t>(scheme.k());
  out.ell = static_cast<std::uint8_t>(scheme.ell());
  out.mu = static_cast<std::uint16_t>(scheme.mu());
  out.generator = scheme.generator();
  out.seed.assign(word.seed.values().begin(), word.seed.values().end());
  out.tags.assign(word.tags.values().begin(), word.tags.values().end());
  return out;
}

Registry::Registry(const Field& field, std::uint32_t k)
    : field_(&field), k_(k) {
  if (k == 0) throw ParamError("registry k must be positive");
}

void Registry::add(std::string label, FieldVector u) {
  if (label.empty()) throw ParamError("registry label must be non-empty");
  if (label.size() > 0xFF)
    throw ParamError("registry label too long (max 255 bytes)");
  for (char c : label) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '#')
      throw ParamError("registry label contains reserved characters");
  }
  if (&u.field() != field_)
    throw FieldMismatchError("registry entry field mismatch");
  if (u.size() != k_) throw ParamError("registry entry length must equal k");
  if (!entries_.emplace(std::move(label), std::move(u)).second)
    throw ParamError("duplicate registry label");
}

const FieldVector* Registry::find(std::string_view label) const {
  const auto it = entries_.find(label);
  if (it == entries_.end()) return nullptr;
  return &it->second;
}

Registry Registry::load(const Field& field, std::uint32_t k,
                        const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParamError("cannot open registry file: " + path);
  Registry reg(field, k);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string label, hex, extra;
    if (!(ls >> label)) continue;        // blank line
    if (label[0] == '#') continue;       // comment
    if (!(ls >> hex) || (ls >> extra))
      throw ParamError("registry line " + std::to_string(lineno) +
                       ": expected `label hex`");
    try {
      reg.add(label, unpack_symbols(field, k, from_hex(hex)));
    } catch (const ParamError& e) {
      throw ParamError("registry line " + std::to_string(lineno) + ": " +
                       e.what());
    }
  }
  return reg;
}

void Registry::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ParamError("cannot open registry file for write: " + path);
  out << "# identification registry: label hex(packed message)\n";
  for (const auto& [label, u] : entries_)
    out << label << " " << to_hex(pack_symbols(u)) << "\n";
  if (!out) throw ParamError("failed writing registry file: " + path);
}

}  // namespace idkit
