#include "idkit/bounds.hpp"

#include <cmath>
#include <string>

#include "idkit/errors.hpp"

namespace idkit {

namespace {

long double entropy_q_l(std::uint64_t q, long double x) {
  const long double lq = std::log2(static_cast<long double>(q));
  long double h = 0;
  if (x > 0) {
    h += x * std::log2(static_cast<long double>(q - 1)) / lq;
    h -= x * std::log2(x) / lq;
  }
  if (x < 1) h -= (1 - x) * std::log2(1 - x) / lq;
  return h;
}

}  // namespace

double entropy_q(std::uint64_t q, double x) {
  if (q < 2) throw ParamError("entropy_q: q must be at least 2");
  if (!(x >= 0.0 && x <= 1.0))
    throw ParamError("entropy_q: x must lie in [0, 1]");
  return static_cast<double>(entropy_q_l(q, x));
}

double vg_rate(std::uint64_t q, double delta) {
  if (q < 2) throw ParamError("vg_rate: q must be at least 2");
  const double limit = 1.0 - 1.0 / static_cast<double>(q);
  if (!(delta >= 0.0 && delta < limit))
    throw ParamError("vg_rate: delta must lie in [0, 1 - 1/q)");
  return static_cast<double>(1.0L - entropy_q_l(q, delta));
}

VgSuccess vg_success_probability(std::uint64_t q, std::uint64_t n,
                                 double eps) {
  if (q < 2) throw ParamError("vg_success_probability: q must be at least 2");
  if (n < 1) throw ParamError("vg_success_probability: n must be positive");
  // 1 - q^(-eps n + 1), kept in log space so the complement survives
  // rounding: for eps n >> 1 the double p is exactly 1.0 while
  // neg_log10_complement still carries the magnitude.
  const long double expo =
      (-static_cast<long double>(eps) * static_cast<long double>(n) + 1.0L) *
      std::log2(static_cast<long double>(q));
  const long double p = 1.0L - std::exp2(expo);
  const long double neg_log10 =
      (static_cast<long double>(eps) * static_cast<long double>(n) - 1.0L) *
      std::log10(static_cast<long double>(q));
  return {static_cast<double>(p), static_cast<double>(neg_log10)};
}

std::uint64_t vg_dimension(std::uint64_t q, std::uint64_t n, double delta,
                           double eps) {
  if (n < 1) throw ParamError("vg_dimension: n must be positive");
  const double rate = vg_rate(q, delta);  // validates q and delta
  if (!(eps > 0.0))
    throw ParamError("vg_dimension: eps must be positive");
  if (!(eps < rate))
    throw ParamError("vg_dimension: eps must stay below the rate 1 - h_q(delta)");
  const long double exact =
      (1.0L - entropy_q_l(q, static_cast<long double>(delta)) -
       static_cast<long double>(eps)) *
      static_cast<long double>(n);
  const long double fl = std::floor(exact);
  if (fl < 1.0L)
    throw ParamError("vg_dimension: parameters leave no room for k >= 1");
  return static_cast<std::uint64_t>(fl);
}

double ident_rate_from_bits(std::uint64_t k, std::uint64_t q,
                            double word_bits) {
  if (k < 1) throw ParamError("ident_rate: k must be positive");
  if (q < 2) throw ParamError("ident_rate: q must be at least 2");
  if (!(word_bits > 0)) throw ParamError("ident_rate: word_bits must be positive");
  const double log2q = std::log2(static_cast<double>(q));
  return (std::log2(static_cast<double>(k)) + std::log2(log2q)) / word_bits;
}

ParamSet plan_parameters(std::uint64_t q, std::uint64_t n, double delta,
                         double eps, std::uint32_t ell) {
  if (n < 2) throw ParamError("plan_parameters: n must be at least 2");
  if (ell < 1) throw ParamError("plan_parameters: ell must be positive");
  ParamSet out;
  out.q = q;
  out.n = n;
  out.delta = delta;
  out.eps = eps;
  out.ell = ell;
  out.k = vg_dimension(q, n, delta, eps);

  const long double lq = std::log2(static_cast<long double>(q));
  const long double ln = std::log2(static_cast<long double>(n));
  out.code_rate = static_cast<double>(static_cast<long double>(out.k) /
                                      static_cast<long double>(n));
  out.lambda2 = 1.0 - delta;
  out.lambda2_ell =
      static_cast<double>(std::pow(1.0L - static_cast<long double>(delta),
                                    static_cast<long double>(ell)));
  const long double word_bits_one = ln + lq;
  out.word_bits = static_cast<double>(ell * word_bits_one);
  out.ident_rate = ident_rate_from_bits(out.k, q,
                                        static_cast<double>(word_bits_one));
  out.message_bits =
      static_cast<double>(static_cast<long double>(out.k) * lq);
  const VgSuccess s = vg_success_probability(q, n, eps);
  out.success_p = s.p;
  out.neg_log10_one_minus_p = s.neg_log10_complement;
  return out;
}

TrendReport optimality_trends(std::span<const ParamSet> schedule) {
  if (schedule.size() < 3)
    throw ParamError("optimality_trends: need at least 3 schedule points");
  TrendReport report;
  report.points.reserve(schedule.size());
  for (const ParamSet& p : schedule) {
    TrendPoint t;
    t.q = p.q;
    t.n = p.n;
    t.k = p.k;
    t.delta = p.delta;
    const double ln = std::log2(static_cast<double>(p.n));
    t.log_q_over_log_n = std::log2(static_cast<double>(p.q)) / ln;
    t.log_k_over_log_n = std::log2(static_cast<double>(p.k)) / ln;
    report.points.push_back(t);
  }
  bool increasing_n = true;
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (schedule[i].n <= schedule[i - 1].n) increasing_n = false;
  if (!increasing_n) {
    report.no_trend = true;
    return report;
  }
  report.q_ratio_decreasing = true;
  report.k_ratio_increasing = true;
  report.delta_increasing = true;
  for (std::size_t i = 1; i < report.points.size(); ++i) {
    const TrendPoint& prev = report.points[i - 1];
    const TrendPoint& cur = report.points[i];
    if (!(cur.log_q_over_log_n < prev.log_q_over_log_n))
      report.q_ratio_decreasing = false;
    if (!(cur.log_k_over_log_n > prev.log_k_over_log_n))
      report.k_ratio_increasing = false;
    if (!(cur.delta > prev.delta)) report.delta_increasing = false;
  }
  return report;
}

}  // namespace idkit
