#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "idkit/errors.hpp"
#include "idkit/prng_ident.hpp"

using namespace idkit;

namespace {

std::vector<std::uint8_t> seed_bytes(std::uint8_t fill) {
  return std::vector<std::uint8_t>(8, fill);
}

FieldVector unrank(const Field& f, std::uint32_t len, std::uint64_t idx) {
  FieldVector out(f, len);
  for (std::uint32_t i = 0; i < len; ++i) {
    out.set(i, static_cast<std::uint32_t>(idx % f.q()));
    idx /= f.q();
  }
  return out;
}

}  // namespace

TEST_CASE("lfsr over GF(2) with taps (1,1) walks its period-3 orbit") {
  // s[i] = s[i-1] + s[i-2] from seed (1,0): 1,0,1,1,0,1,1,0
  const Field& f = Field::get(1);
  const LfsrSpec lfsr(f, {1, 1});
  const FieldVector seed(f, std::vector<std::uint32_t>{1, 0});
  const FieldVector seq = lfsr_step_sequence(lfsr, seed, 8);
  const std::uint32_t expected[8] = {1, 0, 1, 1, 0, 1, 1, 0};
  for (int i = 0; i < 8; ++i) CHECK(seq[i] == expected[i]);
}

TEST_CASE("lfsr reproduces the seed as its first mu outputs") {
  const Field& f = Field::get(4);
  const LfsrSpec lfsr(f, {3, 0, 7});
  const FieldVector seed(f, std::vector<std::uint32_t>{9, 1, 14});
  const FieldVector seq = lfsr_step_sequence(lfsr, seed, 10);
  for (std::uint32_t i = 0; i < 3; ++i) CHECK(seq[i] == seed[i]);
}

TEST_CASE("lfsr recurrence window identity") {
  // For every i >= 0: a_mu s[i] + ... + a_1 s[i+mu-1] + s[i+mu] = 0.
  const Field& f = Field::get(3);
  const LfsrSpec lfsr(f, {5, 2, 6, 1});
  SeededRandom rng(seed_bytes(1), "lfsr-window");
  for (int t = 0; t < 40; ++t) {
    const FieldVector seed = random_vector(f, 4, rng);
    const FieldVector s = lfsr_step_sequence(lfsr, seed, 24);
    const auto taps = lfsr.taps();
    for (std::size_t i = 0; i + 4 < s.size(); ++i) {
      std::uint32_t acc = s[i + 4];
      for (std::size_t j = 1; j <= 4; ++j)
        acc = f.add(acc, f.mul(taps[j - 1], s[i + 4 - j]));
      CHECK(acc == 0);
    }
  }
}

TEST_CASE("nonlinear expansion is a deterministic function of the seed") {
  const Field& f = Field::get(8);
  const PrngScheme scheme = PrngScheme::nonlinear(f, 6, 2, 3);
  SeededRandom rng(seed_bytes(2), "nl-det");
  const FieldVector seed = random_vector(f, 3, rng);
  CHECK(prng_expand(scheme, seed, 20) == prng_expand(scheme, seed, 20));

  FieldVector other = seed;
  other.set(0, f.add(seed[0], 1));
  CHECK_FALSE(prng_expand(scheme, other, 20) == prng_expand(scheme, seed, 20));

  // a longer request extends the same stream
  const FieldVector small = prng_expand(scheme, seed, 5);
  const FieldVector big = prng_expand(scheme, seed, 20);
  for (std::size_t i = 0; i < 5; ++i) CHECK(small[i] == big[i]);
}

TEST_CASE("tag matrix is filled column-major") {
  const Field& f = Field::get(5);
  const PrngScheme scheme = PrngScheme::nonlinear(f, 4, 3, 2);
  SeededRandom rng(seed_bytes(3), "colmajor");
  const FieldVector seed = random_vector(f, 2, rng);
  const FieldVector stream = prng_expand(scheme, seed, 12);
  const auto columns = build_tag_matrix(scheme, seed);
  REQUIRE(columns.size() == 3);
  for (std::uint32_t j = 0; j < 3; ++j) {
    REQUIRE(columns[j].size() == 4);
    for (std::uint32_t r = 0; r < 4; ++r)
      CHECK(columns[j][r] == stream[j * 4 + r]);
  }
}

TEST_CASE("prng words verify for the sender and reject malformed input") {
  const Field& f = Field::get(8);
  const PrngScheme scheme = PrngScheme::nonlinear(f, 6, 2, 3);
  SeededRandom rng(seed_bytes(4), "prng-complete");
  for (int t = 0; t < 100; ++t) {
    const FieldVector u = random_vector(f, 6, rng);
    const PrngIdentWord w = prng_send(scheme, u, rng);
    CHECK(prng_verify(scheme, u, w).accepted);
  }

  const FieldVector u = random_vector(f, 6, rng);
  PrngIdentWord w = prng_send(scheme, u, rng);
  SUBCASE("tampered tag") {
    w.tags.set(0, f.add(w.tags[0], 7));
    const VerifyResult r = prng_verify(scheme, u, w);
    CHECK_FALSE(r.accepted);
    CHECK(r.reason == VerifyResult::Reason::tag_mismatch);
  }
  SUBCASE("wrong seed length") {
    const PrngIdentWord bad{FieldVector(f, 2), w.tags};
    CHECK(prng_verify(scheme, u, bad).reason ==
          VerifyResult::Reason::malformed);
  }
  SUBCASE("wrong tag count") {
    const PrngIdentWord bad{w.seed, FieldVector(f, 3)};
    CHECK(prng_verify(scheme, u, bad).reason ==
          VerifyResult::Reason::malformed);
  }
  SUBCASE("wrong word field") {
    const Field& g = Field::get(4);
    const PrngIdentWord bad{FieldVector(g, 3), FieldVector(g, 2)};
    CHECK(prng_verify(scheme, u, bad).reason ==
          VerifyResult::Reason::malformed);
  }
  SUBCASE("expected-message problems throw") {
    CHECK_THROWS_AS(prng_verify(scheme, FieldVector(f, 5), w), ParamError);
    CHECK_THROWS_AS(prng_verify(scheme, FieldVector(Field::get(4), 6), w),
                    FieldMismatchError);
  }
}

TEST_CASE("nonlinear false accepts sit near q^-ell") {
  const Field& f = Field::get(2);  // q = 4
  const PrngScheme scheme = PrngScheme::nonlinear(f, 5, 1, 2);
  SeededRandom rng(seed_bytes(5), "prng-sound");
  const std::uint64_t trials = 60000;
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const FieldVector u = random_vector(f, 5, rng);
    FieldVector v = random_vector(f, 5, rng);
    while (v == u) v = random_vector(f, 5, rng);
    const PrngIdentWord w = prng_send(scheme, u, rng);
    hits += prng_verify(scheme, v, w).accepted;
  }
  const double p = 0.25;
  const double sigma = std::sqrt(p * (1 - p) / trials);
  CHECK(std::fabs(static_cast<double>(hits) / trials - p) < 4 * sigma);
}

TEST_CASE("forgery pair defeats every seed when the register is short") {
  const Field& f = Field::get(1);
  const LfsrSpec lfsr(f, {1, 1});
  const PrngScheme scheme = PrngScheme::with_lfsr(f, 4, 2, lfsr);
  CHECK_FALSE(scheme.construction_warning().empty());

  const MessagePair pair = lfsr_forgery_pair(lfsr, 4);
  CHECK_FALSE(pair.u == pair.u_prime);
  // v = (a_2, a_1, 1, 0) = (1, 1, 1, 0)
  CHECK(pair.u_prime ==
        FieldVector(f, std::vector<std::uint32_t>{1, 1, 1, 0}));

  for (std::uint64_t s = 0; s < 4; ++s) {
    const FieldVector seed = unrank(f, 2, s);
    const auto columns = build_tag_matrix(scheme, seed);
    FieldVector tags(f, 2);
    for (std::uint32_t j = 0; j < 2; ++j)
      tags.set(j, dot(pair.u, columns[j]));
    const PrngIdentWord word{seed, tags};
    CHECK(prng_verify(scheme, pair.u_prime, word).accepted);
  }
}

TEST_CASE("forgery applies to any tap values over a larger field") {
  const Field& f = Field::get(2);
  SeededRandom rng(seed_bytes(6), "forge-q4");
  for (int t = 0; t < 10; ++t) {
    std::vector<std::uint32_t> taps(3);
    for (auto& tap : taps)
      tap = static_cast<std::uint32_t>(rng.uniform(f.q()));
    const LfsrSpec lfsr(f, taps);
    const std::uint32_t k = 5;
    const PrngScheme scheme = PrngScheme::with_lfsr(f, k, 1, lfsr);
    const MessagePair pair = lfsr_forgery_pair(lfsr, k);
    for (std::uint64_t s = 0; s < 64; ++s) {
      const FieldVector seed = unrank(f, 3, s);
      const auto columns = build_tag_matrix(scheme, seed);
      FieldVector tags(f, 1);
      tags.set(0, dot(pair.u, columns[0]));
      const PrngIdentWord word{seed, tags};
      CHECK(prng_verify(scheme, pair.u_prime, word).accepted);
    }
  }
}

TEST_CASE("forgery pair needs mu < k") {
  const Field& f = Field::get(1);
  const LfsrSpec lfsr(f, {1, 1, 0, 1});
  CHECK_THROWS_AS(lfsr_forgery_pair(lfsr, 4), ParamError);
  CHECK_THROWS_AS(lfsr_forgery_pair(lfsr, 3), ParamError);
  CHECK_NOTHROW(lfsr_forgery_pair(lfsr, 5));
}

TEST_CASE("long registers do not trigger the warning") {
  const Field& f = Field::get(1);
  const LfsrSpec lfsr(f, {1, 0, 0, 1, 1, 0, 1, 1});
  const PrngScheme scheme = PrngScheme::with_lfsr(f, 6, 1, lfsr);
  CHECK(scheme.construction_warning().empty());
}

TEST_CASE("scheme construction validates parameters") {
  const Field& f = Field::get(8);
  CHECK_THROWS_AS(PrngScheme::nonlinear(f, 0, 1, 1), ParamError);
  CHECK_THROWS_AS(PrngScheme::nonlinear(f, 1, 0, 1), ParamError);
  CHECK_THROWS_AS(PrngScheme::nonlinear(f, 1, 300, 1), ParamError);
  CHECK_THROWS_AS(PrngScheme::nonlinear(f, 1, 1, 0), ParamError);
  CHECK_THROWS_AS(PrngScheme::with_lfsr(Field::get(4), 4, 1,
                                        LfsrSpec(f, {1, 2})),
                  FieldMismatchError);
  CHECK_THROWS_AS(LfsrSpec(f, {}), ParamError);
  CHECK_THROWS_AS(LfsrSpec(f, {256}), ParamError);
}

TEST_CASE("prng identification rate") {
  const Field& f = Field::get(10);
  // k = 340, mu = 2, ell = 1: (log2 340 + log2 10) / 30
  CHECK(ident_rate_prng(f, 340, 1, 2) ==
        doctest::Approx(0.39104396770083547).epsilon(1e-12));
  CHECK_THROWS_AS(ident_rate_prng(f, 340, 0, 2), ParamError);
}
