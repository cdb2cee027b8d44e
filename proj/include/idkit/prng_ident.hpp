#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "idkit/gf.hpp"
#include "idkit/prf.hpp"
#include "idkit/verify.hpp"

namespace idkit {

// Seed-synchronized variant: instead of naming a column index, the sender
// draws a short seed sigma, both sides expand it into ell k-symbol columns
// G(sigma), and the word is (sigma, u * G(sigma)).
enum class Generator : std::uint8_t {
  nonlinear_default = 1,  // keyed counter-mode expansion, behaves ideally
  lfsr = 2,               // linear feedback register, deliberately weak
};

std::string_view generator_name(Generator g);
std::optional<Generator> generator_from_name(std::string_view name);

// Feedback taps a_1..a_mu over the field; the register update is
// s[i] = -(a_1 s[i-1] + ... + a_mu s[i-mu]). The first mu outputs are the
// seed itself.
class LfsrSpec {
 public:
  LfsrSpec(const Field& field, std::vector<std::uint32_t> taps);

  const Field& field() const { return *field_; }
  std::uint32_t mu() const {
    return static_cast<std::uint32_t>(taps_.size());
  }
  std::span<const std::uint32_t> taps() const { return taps_; }

 private:
  const Field* field_;
  std::vector<std::uint32_t> taps_;
};

FieldVector lfsr_step_sequence(const LfsrSpec& spec, const FieldVector& seed,
                               std::size_t count);

class PrngScheme {
 public:
  static PrngScheme nonlinear(const Field& field, std::uint32_t k,
                              std::uint32_t ell, std::uint32_t mu);
  static PrngScheme with_lfsr(const Field& field, std::uint32_t k,
                              std::uint32_t ell, LfsrSpec lfsr);

  const Field& field() const { return *field_; }
  Generator generator() const { return generator_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t ell() const { return ell_; }
  std::uint32_t mu() const { return mu_; }
  const LfsrSpec& lfsr() const;
  // Non-empty when the construction is known unsound (lfsr with mu < k).
  const std::string& construction_warning() const { return warning_; }

 private:
  PrngScheme(const Field& field, Generator g, std::uint32_t k,
             std::uint32_t ell, std::uint32_t mu,
             std::optional<LfsrSpec> lfsr);

  const Field* field_;
  Generator generator_;
  std::uint32_t k_;
  std::uint32_t ell_;
  std::uint32_t mu_;
  std::optional<LfsrSpec> lfsr_;
  std::string warning_;
};

// First `count` outputs of the scheme's generator on `seed`.
FieldVector prng_expand(const PrngScheme& scheme, const FieldVector& seed,
                        std::size_t count);

// The ell tag columns of G(seed), filled column-major from the expanded
// stream: column j holds outputs [j*k, (j+1)*k).
std::vector<FieldVector> build_tag_matrix(const PrngScheme& scheme,
                                          const FieldVector& seed);

struct PrngIdentWord {
  FieldVector seed;
  FieldVector tags;
};

PrngIdentWord prng_send(const PrngScheme& scheme, const FieldVector& u,
                        RandomSource& rng);
VerifyResult prng_verify(const PrngScheme& scheme,
                         const FieldVector& expected,
                         const PrngIdentWord& word);

struct MessagePair {
  FieldVector u;
  FieldVector u_prime;
};

// For an lfsr generator with mu < k, returns messages u != u' whose tags
// collide for every seed: the taps themselves, laid into the message as
// (a_mu, ..., a_1, 1, 0, ...), dot to zero against any window of the
// register sequence.
MessagePair lfsr_forgery_pair(const LfsrSpec& spec, std::uint32_t k);

// (log2 k + log2 log2 q) / ((mu + ell) * log2 q).
double ident_rate_prng(const Field& field, std::uint64_t k, std::uint32_t ell,
                       std::uint32_t mu);

}  // namespace idkit
