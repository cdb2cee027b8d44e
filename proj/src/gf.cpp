#include "idkit/gf.hpp"

#include <bit>
#include <memory>
#include <mutex>
#include <string>

#include "idkit/bits.hpp"
#include "idkit/prf.hpp"

namespace idkit {

namespace {

// Least irreducible mask with nonzero constant term, per degree.
constexpr std::uint32_t kReductionPoly[17] = {
    0,       0x3,    0x7,    0xB,    0x13,   0x25,    0x43,   0x83,  0x11B,
    0x203,   0x409,  0x805,  0x1009, 0x201B, 0x4021,  0x8003, 0x1002B};

std::uint32_t poly_mod(std::uint64_t a, std::uint32_t b) {
  const int db = std::bit_width(b) - 1;
  while (std::bit_width(a) - 1 >= db && a != 0) {
    a ^= std::uint64_t(b) << (std::bit_width(a) - 1 - db);
  }
  return static_cast<std::uint32_t>(a);
}

std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, std::uint32_t poly) {
  std::uint64_t acc = 0;
  std::uint64_t aa = a;
  while (b) {
    if (b & 1) acc ^= aa;
    aa <<= 1;
    b >>= 1;
  }
  return poly_mod(acc, poly);
}

std::uint32_t slow_pow(std::uint32_t a, std::uint64_t e, std::uint32_t poly) {
  std::uint32_t r = 1;
  while (e) {
    if (e & 1) r = slow_mul(r, a, poly);
    a = slow_mul(a, a, poly);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_irreducible_gf2(std::uint32_t poly_mask) {
  const int deg = std::bit_width(poly_mask) - 1;
  if (deg < 1) return false;
  if ((poly_mask & 1) == 0) return deg == 1;  // divisible by x
  // Trial division by every polynomial of degree 1..deg/2.
  for (std::uint32_t d = 2; std::bit_width(d) - 1 <= deg / 2; ++d) {
    if (poly_mod(poly_mask, d) == 0) return false;
  }
  return deg >= 1;
}

Field::Field(int m) : m_(m), q_(1u << m), poly_(kReductionPoly[m]) {
  if (!is_irreducible_gf2(poly_))
    throw ParamError("reduction polynomial is not irreducible");

  if (q_ == 2) {
    generator_ = 1;
  } else {
    const auto factors = prime_factors(q_ - 1);
    generator_ = 0;
    for (std::uint32_t g = 2; g < q_; ++g) {
      bool primitive = true;
      for (std::uint32_t p : factors) {
        if (slow_pow(g, (q_ - 1) / p, poly_) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        generator_ = g;
        break;
      }
    }
    if (generator_ == 0) throw ParamError("no multiplicative generator");
  }

  log_.assign(q_, 0);
  exp_.assign(2 * (q_ - 1), 0);
  std::uint32_t cur = 1;
  for (std::uint32_t i = 0; i < q_ - 1; ++i) {
    exp_[i] = static_cast<std::uint16_t>(cur);
    log_[cur] = static_cast<std::uint16_t>(i);
    cur = slow_mul(cur, generator_, poly_);
  }
  if (cur != 1) throw ParamError("generator order mismatch");
  for (std::uint32_t i = q_ - 1; i < 2 * (q_ - 1); ++i)
    exp_[i] = exp_[i - (q_ - 1)];
}

const Field& Field::get(int m) {
  if (m < 1 || m > 16)
    throw ParamError("field degree must be 1..16, got " + std::to_string(m));
  static std::mutex mu;
  static std::unique_ptr<const Field> cache[17];
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[m]) cache[m] = std::unique_ptr<const Field>(new Field(m));
  return *cache[m];
}

std::uint32_t Field::inv(std::uint32_t a) const {
  if (a == 0) throw ParamError("inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t e) const {
  if (a == 0) return e == 0 ? 1u : 0u;
  const std::uint64_t le = (std::uint64_t(log_[a]) * (e % (q_ - 1)));
  return exp_[le % (q_ - 1)];
}

FieldElement element(const Field& f, std::uint32_t value) {
  if (value >= f.q()) throw ParamError("value outside the field");
  return {&f, value};
}

FieldElement add(FieldElement a, FieldElement b) {
  if (a.field != b.field)
    throw FieldMismatchError("adding elements of different fields");
  return {a.field, a.field->add(a.value, b.value)};
}

FieldElement mul(FieldElement a, FieldElement b) {
  if (a.field != b.field)
    throw FieldMismatchError("multiplying elements of different fields");
  return {a.field, a.field->mul(a.value, b.value)};
}

FieldVector::FieldVector(const Field& field, std::vector<std::uint32_t> values)
    : field_(&field), values_(std::move(values)) {
  for (std::uint32_t v : values_) {
    if (v >= field.q()) throw ParamError("vector entry outside the field");
  }
}

void FieldVector::set(std::size_t i, std::uint32_t value) {
  if (i >= values_.size()) throw ParamError("vector index out of range");
  if (value >= field_->q()) throw ParamError("value outside the field");
  values_[i] = value;
}

bool FieldVector::is_zero() const {
  for (std::uint32_t v : values_)
    if (v != 0) return false;
  return true;
}

std::uint32_t dot(const FieldVector& a, const FieldVector& b) {
  if (&a.field() != &b.field())
    throw FieldMismatchError("dot product across different fields");
  if (a.size() != b.size())
    throw ParamError("dot product length mismatch");
  const Field& f = a.field();
  std::uint32_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc = f.add(acc, f.mul(a[i], b[i]));
  return acc;
}

FieldVector add(const FieldVector& a, const FieldVector& b) {
  if (&a.field() != &b.field())
    throw FieldMismatchError("adding vectors over different fields");
  if (a.size() != b.size()) throw ParamError("vector length mismatch");
  FieldVector out(a.field(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out.set(i, a.field().add(a[i], b[i]));
  return out;
}

std::vector<std::uint8_t> pack_symbols(const FieldVector& v) {
  BitWriter w;
  const unsigned m = static_cast<unsigned>(v.field().m());
  for (std::size_t i = 0; i < v.size(); ++i) w.put(v[i], m);
  return w.take();
}

FieldVector unpack_symbols(const Field& field, std::size_t count,
                           std::span<const std::uint8_t> bytes) {
  const std::size_t need_bits = count * static_cast<std::size_t>(field.m());
  const std::size_t need_bytes = (need_bits + 7) / 8;
  if (bytes.size() != need_bytes)
    throw ParamError("packed symbol buffer has the wrong length");
  BitReader r(bytes);
  FieldVector out(field, count);
  for (std::size_t i = 0; i < count; ++i)
    out.set(i, static_cast<std::uint32_t>(
                   r.get(static_cast<unsigned>(field.m()))));
  if (!r.remainder_is_zero())
    throw ParamError("packed symbol buffer has nonzero padding");
  return out;
}

std::uint32_t draw_symbol(const Field& field, RandomSource& rng) {
  // For 2^m every m-bit chunk is already in range; the loop is the general
  // rejection shape.
  std::uint32_t v;
  do {
    v = rng.next_bits(static_cast<unsigned>(field.m()));
  } while (v >= field.q());
  return v;
}

FieldVector random_vector(const Field& field, std::size_t len,
                          RandomSource& rng) {
  FieldVector out(field, len);
  for (std::size_t i = 0; i < len; ++i) out.set(i, draw_symbol(field, rng));
  return out;
}

}  // namespace idkit
