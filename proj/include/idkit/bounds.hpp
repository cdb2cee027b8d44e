#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace idkit {

// q-ary entropy h_q(x) = x log_q(q-1) - x log_q(x) - (1-x) log_q(1-x),
// with 0 log 0 = 0. Domain: q >= 2, 0 <= x <= 1.
double entropy_q(std::uint64_t q, double x);

// Varshamov-Gilbert rate 1 - h_q(delta) for 0 <= delta < 1 - 1/q.
double vg_rate(std::uint64_t q, double delta);

// Probability that a uniformly drawn k x n generator matrix meets the VG
// distance target when k/n sits eps below the VG rate: 1 - q^(-eps n + 1).
// Computed in log space; neg_log10_complement = -log10(1 - p) stays exact
// after p rounds to 1.0 in double precision.
struct VgSuccess {
  double p;
  double neg_log10_complement;
};
VgSuccess vg_success_probability(std::uint64_t q, std::uint64_t n,
                                 double eps);

// Largest dimension the VG argument supports: floor((1 - h_q(delta) - eps) n).
// Throws when the hypotheses fail or the result is 0.
std::uint64_t vg_dimension(std::uint64_t q, std::uint64_t n, double delta,
                           double eps);

// (log2 k + log2 log2 q) / word_bits.
double ident_rate_from_bits(std::uint64_t k, std::uint64_t q,
                            double word_bits);

// Full parameter plan for a code-based identification setup.
struct ParamSet {
  std::uint64_t q = 0;
  std::uint64_t n = 0;
  double delta = 0;
  double eps = 0;
  std::uint32_t ell = 1;
  std::uint64_t k = 0;
  double code_rate = 0;       // k / n
  double lambda2 = 0;         // single-word false-accept bound, 1 - delta
  double lambda2_ell = 0;     // after ell repetitions
  double word_bits = 0;       // ell * (log2 n + log2 q)
  double ident_rate = 0;      // single-word rate
  double message_bits = 0;    // k log2 q
  double success_p = 0;       // probability the drawn code meets the target
  double neg_log10_one_minus_p = 0;
};

ParamSet plan_parameters(std::uint64_t q, std::uint64_t n, double delta,
                         double eps, std::uint32_t ell);

// Trend check over a growth schedule: with q = poly(log n) the sequence is
// asymptotically optimal when log q / log n falls toward 0 while
// log k / log n and delta rise toward 1.
struct TrendPoint {
  std::uint64_t q = 0;
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  double delta = 0;
  double log_q_over_log_n = 0;
  double log_k_over_log_n = 0;
};

struct TrendReport {
  std::vector<TrendPoint> points;
  bool q_ratio_decreasing = false;
  bool k_ratio_increasing = false;
  bool delta_increasing = false;
  bool no_trend = false;  // n not strictly increasing; flags above unset
};

TrendReport optimality_trends(std::span<const ParamSet> schedule);

}  // namespace idkit
