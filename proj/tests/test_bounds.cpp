#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "idkit/bounds.hpp"
#include "idkit/errors.hpp"

using namespace idkit;

TEST_CASE("binary entropy anchor points") {
  CHECK(entropy_q(2, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(entropy_q(2, 0.0) == doctest::Approx(0.0));
  CHECK(entropy_q(2, 1.0) == doctest::Approx(0.0));
  CHECK(entropy_q(2, 0.2) ==
        doctest::Approx(0.721928094887362).epsilon(1e-12));
  // symmetry of the binary case
  CHECK(entropy_q(2, 0.3) == doctest::Approx(entropy_q(2, 0.7)).epsilon(1e-12));
}

TEST_CASE("q-ary entropy peaks at 1 - 1/q with value 1") {
  for (std::uint64_t q : {4ull, 16ull, 1024ull}) {
    const double peak = 1.0 - 1.0 / static_cast<double>(q);
    CHECK(entropy_q(q, peak) == doctest::Approx(1.0).epsilon(1e-12));
    // strictly below 1 on either side (the right margin shrinks with q)
    CHECK(entropy_q(q, peak - 0.05) < 1.0);
    CHECK(entropy_q(q, peak + (1.0 - peak) / 2) < 1.0);
  }
}

TEST_CASE("entropy rejects out-of-domain input") {
  CHECK_THROWS_AS(entropy_q(1, 0.5), ParamError);
  CHECK_THROWS_AS(entropy_q(2, -0.1), ParamError);
  CHECK_THROWS_AS(entropy_q(2, 1.1), ParamError);
}

TEST_CASE("vg rate at the worked example") {
  // q = 2^10, delta = 1 - 2^-7
  const double delta = 1.0 - 1.0 / 128.0;
  CHECK(vg_rate(1024, delta) ==
        doctest::Approx(0.0013609145643815041).epsilon(1e-9));
  CHECK_THROWS_AS(vg_rate(1024, 1.0 - 1.0 / 1024.0), ParamError);
  CHECK_THROWS_AS(vg_rate(1024, -0.01), ParamError);
}

TEST_CASE("vg dimension floors and validates") {
  const double delta = 1.0 - 1.0 / 128.0;
  const double eps = std::ldexp(1.0, -14);
  CHECK(vg_dimension(1024, 1u << 18, delta, eps) == 340);
  // eps at the rate leaves nothing
  CHECK_THROWS_AS(vg_dimension(1024, 1u << 18, delta, 0.0014), ParamError);
  CHECK_THROWS_AS(vg_dimension(1024, 1u << 18, delta, 0.0), ParamError);
  // tiny n: floor lands on 0
  CHECK_THROWS_AS(vg_dimension(2, 4, 0.2, 0.1), ParamError);
}

TEST_CASE("success probability is reported in log space") {
  const double eps = std::ldexp(1.0, -14);
  const VgSuccess s = vg_success_probability(1024, 1u << 18, eps);
  CHECK(s.p == 1.0);  // rounds to 1 in double
  CHECK(s.neg_log10_complement == doctest::Approx(45.15449934).epsilon(1e-6));

  // small exponent keeps p meaningful
  const VgSuccess t = vg_success_probability(2, 100, 0.05);
  CHECK(t.p == doctest::Approx(1.0 - std::exp2(-4.0)).epsilon(1e-12));
  CHECK(t.neg_log10_complement ==
        doctest::Approx(4.0 * std::log10(2.0)).epsilon(1e-12));

  // eps n < 1: bound turns vacuous (p <= 0)
  const VgSuccess v = vg_success_probability(2, 14, 0.05);
  CHECK(v.p < 0.0);
  CHECK(v.neg_log10_complement < 0.0);
}

TEST_CASE("plan reproduces the worked large-field example") {
  const double delta = 1.0 - 1.0 / 128.0;
  const double eps = std::ldexp(1.0, -14);
  const ParamSet p = plan_parameters(1024, 1u << 18, delta, eps, 1);
  CHECK(p.k == 340);
  CHECK(p.lambda2 == doctest::Approx(1.0 / 128.0).epsilon(1e-12));
  CHECK(p.word_bits == doctest::Approx(28.0).epsilon(1e-12));
  CHECK(p.ident_rate == doctest::Approx(0.419).epsilon(2e-3));
  CHECK(p.message_bits == doctest::Approx(3400.0).epsilon(1e-12));
  CHECK(p.neg_log10_one_minus_p == doctest::Approx(45.15).epsilon(1e-3));
  CHECK(p.code_rate ==
        doctest::Approx(340.0 / (1u << 18)).epsilon(1e-12));
}

TEST_CASE("plan applies ell to the word and the bound") {
  const double delta = 1.0 - 1.0 / 128.0;
  const double eps = std::ldexp(1.0, -14);
  const ParamSet p = plan_parameters(1024, 1u << 18, delta, eps, 2);
  CHECK(p.word_bits == doctest::Approx(56.0).epsilon(1e-12));
  CHECK(p.lambda2_ell ==
        doctest::Approx(1.0 / (128.0 * 128.0)).epsilon(1e-12));
  // single-word rate is unchanged by repetitions
  CHECK(p.ident_rate == doctest::Approx(0.419).epsilon(2e-3));
}

TEST_CASE("ident rate helper rejects degenerate input") {
  CHECK_THROWS_AS(ident_rate_from_bits(0, 1024, 28.0), ParamError);
  CHECK_THROWS_AS(ident_rate_from_bits(340, 1, 28.0), ParamError);
  CHECK_THROWS_AS(ident_rate_from_bits(340, 1024, 0.0), ParamError);
}

TEST_CASE("growth schedule turns the right way") {
  // q = 2^(2t), n = q^t, delta = 1 - q^(-1/2), eps = half the remaining rate
  std::vector<ParamSet> schedule;
  for (std::uint32_t t = 2; t <= 4; ++t) {
    const std::uint64_t q = 1ull << (2 * t);
    const std::uint64_t n = [&] {
      std::uint64_t v = 1;
      for (std::uint32_t i = 0; i < t; ++i) v *= q;
      return v;
    }();
    const double delta = 1.0 - 1.0 / std::sqrt(static_cast<double>(q));
    const double rate = vg_rate(q, delta);
    schedule.push_back(plan_parameters(q, n, delta, rate / 2.0, 1));
  }
  const TrendReport r = optimality_trends(schedule);
  CHECK_FALSE(r.no_trend);
  CHECK(r.q_ratio_decreasing);
  CHECK(r.k_ratio_increasing);
  CHECK(r.delta_increasing);
  REQUIRE(r.points.size() == 3);
  CHECK(r.points[0].log_q_over_log_n == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.points[2].log_q_over_log_n == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("trend check flags a non-growing schedule") {
  const double delta = 0.5;
  std::vector<ParamSet> schedule;
  for (int i = 0; i < 3; ++i)
    schedule.push_back(plan_parameters(64, 4096, delta, 0.05, 1));
  const TrendReport r = optimality_trends(schedule);
  CHECK(r.no_trend);
  CHECK_FALSE(r.q_ratio_decreasing);
}

TEST_CASE("trend check needs three points") {
  std::vector<ParamSet> schedule(2);
  schedule[0] = plan_parameters(64, 4096, 0.5, 0.05, 1);
  schedule[1] = plan_parameters(64, 8192, 0.5, 0.05, 1);
  CHECK_THROWS_AS(optimality_trends(schedule), ParamError);
}
