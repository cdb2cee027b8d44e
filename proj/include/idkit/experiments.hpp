#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "idkit/code.hpp"
#include "idkit/prng_ident.hpp"

namespace idkit {

// 95% Wilson score interval for a binomial proportion.
struct BinomialInterval {
  double low = 0;
  double high = 0;
};
BinomialInterval wilson95(std::uint64_t successes, std::uint64_t trials);

enum class TrialMode {
  random_pairs,           // Monte Carlo over (u, u', word randomness)
  worst_pair_exhaustive,  // every ordered pair x every index / seed
};

struct CodeTrialScheme {
  CodeSpec spec;
  std::uint32_t ell = 1;
};

struct PrngTrialScheme {
  PrngScheme scheme;
};

// Every trial draws its randomness from a stream derived off master_seed,
// one stream per trial index, so reports are bit-reproducible and the
// parallel and serial drivers count exactly the same events.
struct TrialConfig {
  std::variant<std::monostate, CodeTrialScheme, PrngTrialScheme> scheme;
  TrialMode mode = TrialMode::random_pairs;
  std::uint64_t trials = 0;               // random_pairs only
  std::vector<std::uint8_t> master_seed;  // random_pairs only
  bool same_message = false;  // verify against the sender's own u
};

struct TrialReport {
  std::uint64_t accepts = 0;
  std::uint64_t trials = 0;
  double p_hat = 0;
  double ci_low = 0;
  double ci_high = 0;
  double reference = 0;  // q^-ell, or 1.0 when same_message
  bool covered = false;  // reference inside [ci_low, ci_high]
  bool exhaustive = false;
  double worst_rate = 0;  // exhaustive mode: max false-accept rate over pairs
};

TrialReport estimate_false_accept(const TrialConfig& config);
TrialReport estimate_false_accept_serial(const TrialConfig& config);

// Exact minimum distance by enumerating all q^k - 1 nonzero messages.
// Budget: q^k <= 2^20 and q^k * n <= 2^26.
struct DistanceReport {
  std::uint32_t distance = 0;
  bool degenerate = false;  // distance 0: repeated/zero columns collapse
};
DistanceReport min_distance(const CodeSpec& spec);
DistanceReport min_distance_serial(const CodeSpec& spec);

// Draws `samples` random codes at the VG-planned dimension and counts how
// many meet the distance target; reports the theoretical bound next to the
// empirical fraction.
struct VgSampleReport {
  std::uint64_t samples = 0;
  std::uint64_t successes = 0;
  double fraction = 0;
  double bound_p = 0;
  bool bound_vacuous = false;  // bound <= 0 carries no information
  std::uint64_t k = 0;
  std::uint32_t distance_threshold = 0;
};
VgSampleReport vg_sample(const Field& field, std::uint64_t n, double delta,
                         double eps, std::uint64_t samples,
                         std::span<const std::uint8_t> master_seed);
VgSampleReport vg_sample_serial(const Field& field, std::uint64_t n,
                                double delta, double eps,
                                std::uint64_t samples,
                                std::span<const std::uint8_t> master_seed);

}  // namespace idkit
