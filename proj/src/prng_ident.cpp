#include "idkit/prng_ident.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "idkit/bits.hpp"
#include "idkit/bounds.hpp"

namespace idkit {

std::string_view generator_name(Generator g) {
  switch (g) {
    case Generator::nonlinear_default:
      return "nonlinear-default";
    case Generator::lfsr:
      return "lfsr";
  }
  return "unknown";
}

std::optional<Generator> generator_from_name(std::string_view name) {
  if (name == "nonlinear-default") return Generator::nonlinear_default;
  if (name == "lfsr") return Generator::lfsr;
  return std::nullopt;
}

LfsrSpec::LfsrSpec(const Field& field, std::vector<std::uint32_t> taps)
    : field_(&field), taps_(std::move(taps)) {
  if (taps_.empty()) throw ParamError("lfsr needs at least one tap");
  if (taps_.size() > 0xFFFF) throw ParamError("lfsr register too long");
  for (std::uint32_t t : taps_) {
    if (t >= field.q()) throw ParamError("lfsr tap outside the field");
  }
}

FieldVector lfsr_step_sequence(const LfsrSpec& spec, const FieldVector& seed,
                               std::size_t count) {
  if (&seed.field() != &spec.field())
    throw FieldMismatchError("lfsr seed field does not match the register");
  if (seed.size() != spec.mu())
    throw ParamError("lfsr seed length must equal the register length");
  if (count == 0) throw ParamError("lfsr output count must be positive");

  const Field& f = spec.field();
  const auto taps = spec.taps();
  const std::size_t mu = taps.size();
  FieldVector out(f, count);
  for (std::size_t i = 0; i < count && i < mu; ++i) out.set(i, seed[i]);
  for (std::size_t i = mu; i < count; ++i) {
    std::uint32_t acc = 0;
    for (std::size_t j = 1; j <= mu; ++j)
      acc = f.add(acc, f.mul(taps[j - 1], out[i - j]));
    out.set(i, f.neg(acc));
  }
  return out;
}

PrngScheme::PrngScheme(const Field& field, Generator g, std::uint32_t k,
                       std::uint32_t ell, std::uint32_t mu,
                       std::optional<LfsrSpec> lfsr)
    : field_(&field),
      generator_(g),
      k_(k),
      ell_(ell),
      mu_(mu),
      lfsr_(std::move(lfsr)) {
  if (k == 0) throw ParamError("k must be positive");
  if (k > 0xFFFF) throw ParamError("k must fit 16 bits");
  if (ell == 0) throw ParamError("ell must be positive");
  if (ell > 0xFF) throw ParamError("ell must fit 8 bits");
  if (mu == 0) throw ParamError("mu must be positive");
  if (mu > 0xFFFF) throw ParamError("mu must fit 16 bits");
  if (generator_ == Generator::lfsr && mu_ < k_) {
    warning_ =
        "lfsr generator with register shorter than the message admits a "
        "message pair accepted for every seed; use nonlinear-default";
  }
}

PrngScheme PrngScheme::nonlinear(const Field& field, std::uint32_t k,
                                 std::uint32_t ell, std::uint32_t mu) {
  return PrngScheme(field, Generator::nonlinear_default, k, ell, mu,
                    std::nullopt);
}

PrngScheme PrngScheme::with_lfsr(const Field& field, std::uint32_t k,
                                 std::uint32_t ell, LfsrSpec lfsr) {
  if (&lfsr.field() != &field)
    throw FieldMismatchError("lfsr register field does not match the scheme");
  const std::uint32_t mu = lfsr.mu();
  return PrngScheme(field, Generator::lfsr, k, ell, mu, std::move(lfsr));
}

const LfsrSpec& PrngScheme::lfsr() const {
  if (!lfsr_) throw ParamError("scheme has no lfsr generator");
  return *lfsr_;
}

FieldVector prng_expand(const PrngScheme& scheme, const FieldVector& seed,
                        std::size_t count) {
  if (&seed.field() != &scheme.field())
    throw FieldMismatchError("seed field does not match the scheme");
  if (seed.size() != scheme.mu())
    throw ParamError("seed length must equal mu");
  if (count == 0) throw ParamError("output count must be positive");

  if (scheme.generator() == Generator::lfsr)
    return lfsr_step_sequence(scheme.lfsr(), seed, count);

  const std::uint8_t m_byte = static_cast<std::uint8_t>(scheme.field().m());
  const std::uint8_t mu_hi = static_cast<std::uint8_t>(scheme.mu() >> 8);
  const std::uint8_t mu_lo = static_cast<std::uint8_t>(scheme.mu() & 0xFF);
  const std::vector<std::uint8_t> packed = pack_symbols(seed);
  const auto key =
      derive_key("idkit.prng.nonlinear.v1",
                 {{&m_byte, 1}, {&mu_hi, 1}, {&mu_lo, 1}, packed});
  SeededRandom rng(key, std::array<std::uint8_t, 12>{});
  return random_vector(scheme.field(), count, rng);
}

std::vector<FieldVector> build_tag_matrix(const PrngScheme& scheme,
                                          const FieldVector& seed) {
  const FieldVector stream = prng_expand(
      scheme, seed, std::size_t(scheme.ell()) * scheme.k());
  std::vector<FieldVector> columns;
  columns.reserve(scheme.ell());
  for (std::uint32_t j = 0; j < scheme.ell(); ++j) {
    FieldVector col(scheme.field(), scheme.k());
    for (std::uint32_t r = 0; r < scheme.k(); ++r)
      col.set(r, stream[std::size_t(j) * scheme.k() + r]);
    columns.push_back(std::move(col));
  }
  return columns;
}

namespace {

void check_prng_message(const PrngScheme& scheme, const FieldVector& u,
                        const char* who) {
  if (&u.field() != &scheme.field())
    throw FieldMismatchError(std::string(who) +
                             ": message field does not match the scheme");
  if (u.size() != scheme.k())
    throw ParamError(std::string(who) + ": message length must equal k");
}

}  // namespace

PrngIdentWord prng_send(const PrngScheme& scheme, const FieldVector& u,
                        RandomSource& rng) {
  check_prng_message(scheme, u, "prng_send");
  FieldVector seed = random_vector(scheme.field(), scheme.mu(), rng);
  const auto columns = build_tag_matrix(scheme, seed);
  FieldVector tags(scheme.field(), scheme.ell());
  for (std::uint32_t j = 0; j < scheme.ell(); ++j)
    tags.set(j, dot(u, columns[j]));
  return {std::move(seed), std::move(tags)};
}

VerifyResult prng_verify(const PrngScheme& scheme,
                         const FieldVector& expected,
                         const PrngIdentWord& word) {
  check_prng_message(scheme, expected, "prng_verify");
  if (&word.seed.field() != &scheme.field() ||
      &word.tags.field() != &scheme.field())
    return VerifyResult::reject_malformed("word field mismatch");
  if (word.seed.size() != scheme.mu())
    return VerifyResult::reject_malformed("seed length must equal mu");
  if (word.tags.size() != scheme.ell())
    return VerifyResult::reject_malformed("tag count must equal ell");

  const auto columns = build_tag_matrix(scheme, word.seed);
  for (std::uint32_t j = 0; j < scheme.ell(); ++j) {
    if (dot(expected, columns[j]) != word.tags[j])
      return VerifyResult::reject_tags("tag mismatch at position " +
                                       std::to_string(j));
  }
  return VerifyResult::accept();
}

MessagePair lfsr_forgery_pair(const LfsrSpec& spec, std::uint32_t k) {
  const std::uint32_t mu = spec.mu();
  if (mu + 1 > k)
    throw ParamError(
        "forgery needs the register to be shorter than the message "
        "(mu + 1 <= k)");
  const Field& f = spec.field();
  const auto taps = spec.taps();
  FieldVector u(f, k);
  FieldVector v(f, k);
  // (a_mu, ..., a_1, 1, 0, ...): against any window of the register
  // sequence this dots to the recurrence itself, which is zero.
  for (std::uint32_t i = 0; i < mu; ++i) v.set(i, taps[mu - 1 - i]);
  v.set(mu, 1);
  return {std::move(u), std::move(v)};
}

double ident_rate_prng(const Field& field, std::uint64_t k, std::uint32_t ell,
                       std::uint32_t mu) {
  if (ell == 0 || mu == 0) throw ParamError("ell and mu must be positive");
  const double word_bits =
      static_cast<double>(mu + ell) * static_cast<double>(field.m());
  return ident_rate_from_bits(k, field.q(), word_bits);
}

}  // namespace idkit
