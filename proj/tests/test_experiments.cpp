#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "idkit/errors.hpp"
#include "idkit/experiments.hpp"

using namespace idkit;

namespace {

std::vector<std::uint8_t> seed_bytes(std::uint8_t fill) {
  return std::vector<std::uint8_t>(16, fill);
}

bool reports_equal(const TrialReport& a, const TrialReport& b) {
  return a.accepts == b.accepts && a.trials == b.trials &&
         a.p_hat == b.p_hat && a.ci_low == b.ci_low &&
         a.ci_high == b.ci_high && a.reference == b.reference &&
         a.covered == b.covered && a.exhaustive == b.exhaustive &&
         a.worst_rate == b.worst_rate;
}

}  // namespace

TEST_CASE("wilson interval matches frozen values") {
  const BinomialInterval a = wilson95(5, 100);
  CHECK(a.low == doctest::Approx(0.021543679154367971).epsilon(1e-10));
  CHECK(a.high == doctest::Approx(0.11175046923191915).epsilon(1e-10));

  const BinomialInterval b = wilson95(0, 50);
  CHECK(b.low == 0.0);
  CHECK(b.high == doctest::Approx(0.07134759913335873).epsilon(1e-10));

  const BinomialInterval c = wilson95(625, 10000);
  CHECK(c.low == doctest::Approx(0.057921618740657515).epsilon(1e-10));
  CHECK(c.high == doctest::Approx(0.067414379833684507).epsilon(1e-10));

  CHECK_THROWS_AS(wilson95(1, 0), ParamError);
  CHECK_THROWS_AS(wilson95(3, 2), ParamError);
}

TEST_CASE("monte carlo code trials cover q^-ell and reproduce bit-exactly") {
  const Field& f = Field::get(4);
  TrialConfig config;
  config.scheme =
      CodeTrialScheme{CodeSpec(f, 6, 512, seed_bytes(0x51)), 1};
  config.mode = TrialMode::random_pairs;
  config.trials = 40000;
  config.master_seed = seed_bytes(0xA1);

  const TrialReport serial = estimate_false_accept_serial(config);
  const TrialReport parallel = estimate_false_accept(config);
  const TrialReport again = estimate_false_accept(config);

  CHECK(reports_equal(serial, parallel));
  CHECK(reports_equal(parallel, again));
  CHECK(serial.reference == doctest::Approx(1.0 / 16.0));
  CHECK(serial.covered);
  CHECK(serial.trials == 40000);
  CHECK(serial.p_hat > 0.0);
}

TEST_CASE("same-message trials always accept") {
  const Field& f = Field::get(8);
  TrialConfig config;
  config.scheme =
      CodeTrialScheme{CodeSpec(f, 5, 100, seed_bytes(0x52)), 2};
  config.trials = 2000;
  config.master_seed = seed_bytes(0xA2);
  config.same_message = true;

  const TrialReport r = estimate_false_accept(config);
  CHECK(r.accepts == r.trials);
  CHECK(r.reference == 1.0);
  CHECK(r.covered);
}

TEST_CASE("prng monte carlo matches the serial reference") {
  const Field& f = Field::get(4);
  TrialConfig config;
  config.scheme = PrngTrialScheme{PrngScheme::nonlinear(f, 5, 1, 2)};
  config.trials = 30000;
  config.master_seed = seed_bytes(0xA3);

  const TrialReport serial = estimate_false_accept_serial(config);
  const TrialReport parallel = estimate_false_accept(config);
  CHECK(reports_equal(serial, parallel));
  CHECK(serial.reference == doctest::Approx(1.0 / 16.0));
  CHECK(serial.covered);
}

TEST_CASE("exhaustive code mode agrees with monte carlo on a tiny code") {
  const Field& f = Field::get(1);
  const CodeSpec spec(f, 2, 4, seed_bytes(0x53));

  TrialConfig exhaustive;
  exhaustive.scheme = CodeTrialScheme{spec, 1};
  exhaustive.mode = TrialMode::worst_pair_exhaustive;
  const TrialReport exact = estimate_false_accept(exhaustive);
  CHECK(exact.exhaustive);
  CHECK(exact.trials == 4ull * 3ull * 4ull);
  CHECK(reports_equal(exact, estimate_false_accept_serial(exhaustive)));

  TrialConfig mc;
  mc.scheme = CodeTrialScheme{spec, 1};
  mc.trials = 100000;
  mc.master_seed = seed_bytes(0xA4);
  const TrialReport sampled = estimate_false_accept(mc);
  CHECK(sampled.ci_low <= exact.p_hat);
  CHECK(exact.p_hat <= sampled.ci_high);
}

TEST_CASE("exhaustive worst pair equals one minus normalized distance") {
  const Field& f = Field::get(1);
  for (std::uint8_t fill : {0x10, 0x21, 0x32, 0x43, 0x54}) {
    const CodeSpec spec(f, 3, 7, seed_bytes(fill));
    TrialConfig config;
    config.scheme = CodeTrialScheme{spec, 1};
    config.mode = TrialMode::worst_pair_exhaustive;
    const TrialReport r = estimate_false_accept(config);
    const DistanceReport d = min_distance(spec);
    CHECK(r.worst_rate ==
          doctest::Approx(1.0 - static_cast<double>(d.distance) / 7.0));
  }
}

TEST_CASE("exhaustive prng mode sees the forged pair as worst") {
  const Field& f = Field::get(1);
  const LfsrSpec lfsr(f, {1, 1});
  TrialConfig config;
  config.scheme =
      PrngTrialScheme{PrngScheme::with_lfsr(f, 3, 1, lfsr)};
  config.mode = TrialMode::worst_pair_exhaustive;
  const TrialReport r = estimate_false_accept(config);
  CHECK(r.exhaustive);
  CHECK(r.worst_rate == 1.0);  // some pair accepted for every seed
  CHECK(reports_equal(r, estimate_false_accept_serial(config)));
}

TEST_CASE("trial configs are validated before the loops start") {
  const Field& f = Field::get(1);
  TrialConfig config;
  config.scheme = CodeTrialScheme{CodeSpec(f, 2, 4, seed_bytes(1)), 1};
  SUBCASE("zero trials") {
    CHECK_THROWS_AS(estimate_false_accept(config), ParamError);
  }
  SUBCASE("missing master seed") {
    config.trials = 10;
    CHECK_THROWS_AS(estimate_false_accept(config), ParamError);
  }
  SUBCASE("exhaustive rejects ell > 1") {
    config.scheme = CodeTrialScheme{CodeSpec(f, 2, 4, seed_bytes(1)), 2};
    config.mode = TrialMode::worst_pair_exhaustive;
    CHECK_THROWS_AS(estimate_false_accept(config), ParamError);
  }
  SUBCASE("exhaustive rejects oversized enumerations") {
    config.scheme =
        CodeTrialScheme{CodeSpec(Field::get(16), 8, 1024, seed_bytes(1)), 1};
    config.mode = TrialMode::worst_pair_exhaustive;
    CHECK_THROWS_AS(estimate_false_accept(config), EnumerationError);
  }
}

TEST_CASE("min distance agrees between drivers and stays in range") {
  const Field& f = Field::get(2);
  for (std::uint8_t fill : {0x61, 0x62, 0x63}) {
    const CodeSpec spec(f, 4, 24, seed_bytes(fill));
    const DistanceReport a = min_distance(spec);
    const DistanceReport b = min_distance_serial(spec);
    CHECK(a.distance == b.distance);
    CHECK(a.degenerate == b.degenerate);
    CHECK(a.distance <= 24);
  }
}

TEST_CASE("min distance flags a collapsed code as degenerate") {
  // k > n forces dependent columns, so some nonzero message maps to the
  // zero codeword and the distance is 0.
  const Field& f = Field::get(1);
  const CodeSpec spec(f, 6, 3, seed_bytes(0x64));
  const DistanceReport d = min_distance(spec);
  CHECK(d.distance == 0);
  CHECK(d.degenerate);
}

TEST_CASE("min distance enforces the enumeration budget") {
  const Field& f = Field::get(16);
  const CodeSpec big(f, 6, 16, seed_bytes(0x65));
  CHECK_THROWS_AS(min_distance(big), EnumerationError);
  const CodeSpec wide(Field::get(1), 8, 1u << 24, seed_bytes(0x66));
  CHECK_THROWS_AS(min_distance(wide), EnumerationError);
}

TEST_CASE("vg sampling beats its bound on a small binary code") {
  const Field& f = Field::get(1);
  const VgSampleReport serial =
      vg_sample_serial(f, 14, 0.2, 0.1, 60, seed_bytes(0x71));
  const VgSampleReport parallel =
      vg_sample(f, 14, 0.2, 0.1, 60, seed_bytes(0x71));
  CHECK(serial.successes == parallel.successes);
  CHECK(serial.k == 2);
  CHECK(serial.distance_threshold == 3);
  CHECK_FALSE(serial.bound_vacuous);
  CHECK(serial.bound_p == doctest::Approx(0.24214171674480096).epsilon(1e-9));
  CHECK(serial.fraction >= serial.bound_p);
}

TEST_CASE("vg sampling labels a vacuous bound") {
  const Field& f = Field::get(1);
  const VgSampleReport r = vg_sample(f, 14, 0.2, 0.05, 20, seed_bytes(0x72));
  CHECK(r.bound_vacuous);
  CHECK(r.bound_p <= 0.0);
  // the empirical fraction is still a real number in [0, 1]
  CHECK(r.fraction >= 0.0);
  CHECK(r.fraction <= 1.0);
}

TEST_CASE("vg sampling validates its inputs") {
  const Field& f = Field::get(1);
  CHECK_THROWS_AS(vg_sample(f, 14, 0.2, 0.1, 0, seed_bytes(1)), ParamError);
  CHECK_THROWS_AS(vg_sample(f, 14, 0.2, 0.1, 10, {}), ParamError);
  // parameters that plan k = 0 are rejected outright
  CHECK_THROWS_AS(vg_sample(f, 4, 0.2, 0.1, 10, seed_bytes(1)), ParamError);
}
