#include "idkit/experiments.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "idkit/bits.hpp"
#include "idkit/bounds.hpp"

namespace idkit {

BinomialInterval wilson95(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) throw ParamError("wilson95: trials must be positive");
  if (successes > trials)
    throw ParamError("wilson95: successes exceed trials");
  const double z = 1.959963984540054;  // 97.5% normal quantile
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = p + z2 / (2.0 * n);
  const double spread =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  BinomialInterval out;
  // At the extremes the interval endpoint is exactly 0 or 1; computing it
  // through the general formula would leave rounding residue.
  out.low = (successes == 0) ? 0.0 : (center - spread) / denom;
  out.high = (successes == trials) ? 1.0 : (center + spread) / denom;
  if (out.low < 0) out.low = 0;
  if (out.high > 1) out.high = 1;
  return out;
}

namespace {

constexpr std::uint32_t kTrialDomain = 0x74726c00;  // "trl\0"
constexpr std::uint64_t kEnumBudget = 1ull << 24;

std::array<std::uint8_t, 32> trial_root(
    std::span<const std::uint8_t> master_seed) {
  return derive_key("idkit.experiments.trials.v1", {master_seed});
}

SeededRandom trial_rng(const std::array<std::uint8_t, 32>& root,
                       std::uint64_t t) {
  return SeededRandom(root, make_nonce(kTrialDomain, t));
}

struct SchemeShape {
  const Field* field;
  std::uint32_t k;
  std::uint32_t ell;
};

SchemeShape shape_of(const TrialConfig& config) {
  if (std::holds_alternative<std::monostate>(config.scheme))
    throw ParamError("trial config has no scheme");
  if (const auto* c = std::get_if<CodeTrialScheme>(&config.scheme)) {
    if (c->ell == 0) throw ParamError("trial ell must be positive");
    return {&c->spec.field(), c->spec.k(), c->ell};
  }
  const auto& p = std::get<PrngTrialScheme>(config.scheme).scheme;
  return {&p.field(), p.k(), p.ell()};
}

// One Monte Carlo trial: fresh (u, u'), fresh word, one verdict.
bool run_pair_trial(const TrialConfig& config, const SchemeShape& shape,
                    const std::array<std::uint8_t, 32>& root,
                    std::uint64_t t) {
  SeededRandom rng = trial_rng(root, t);
  const Field& f = *shape.field;
  const FieldVector u = random_vector(f, shape.k, rng);
  FieldVector other = u;
  if (!config.same_message) {
    do {
      other = random_vector(f, shape.k, rng);
    } while (other == u);
  }
  if (const auto* c = std::get_if<CodeTrialScheme>(&config.scheme)) {
    const CodeIdentWord word = send(c->spec, u, c->ell, rng);
    return verify(c->spec, other, word).accepted;
  }
  const auto& scheme = std::get<PrngTrialScheme>(config.scheme).scheme;
  const PrngIdentWord word = prng_send(scheme, u, rng);
  return prng_verify(scheme, other, word).accepted;
}

std::uint64_t pow_checked(std::uint64_t base, std::uint32_t e,
                          std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    if (v > cap / base) return cap + 1;
    v *= base;
  }
  return v;
}

FieldVector unrank_message(const Field& f, std::uint32_t k,
                           std::uint64_t index) {
  FieldVector out(f, k);
  for (std::uint32_t j = 0; j < k; ++j) {
    out.set(j, static_cast<std::uint32_t>(index % f.q()));
    index /= f.q();
  }
  return out;
}

TrialReport finish_random_report(const TrialConfig& config,
                                 const SchemeShape& shape,
                                 std::uint64_t accepts) {
  TrialReport report;
  report.accepts = accepts;
  report.trials = config.trials;
  report.p_hat =
      static_cast<double>(accepts) / static_cast<double>(config.trials);
  const BinomialInterval ci = wilson95(accepts, config.trials);
  report.ci_low = ci.low;
  report.ci_high = ci.high;
  report.reference =
      config.same_message
          ? 1.0
          : std::pow(static_cast<double>(shape.field->q()),
                     -static_cast<double>(shape.ell));
  report.covered =
      report.reference >= report.ci_low && report.reference <= report.ci_high;
  report.exhaustive = false;
  report.worst_rate = report.p_hat;
  return report;
}

void check_random_config(const TrialConfig& config) {
  if (config.trials == 0)
    throw ParamError("random-pairs mode needs trials >= 1");
  if (config.master_seed.empty())
    throw ParamError("random-pairs mode needs a master seed");
}

// Exhaustive code mode: every ordered pair (u, u') times every column.
// Tags for all messages are materialized once; the pair loop then only
// compares rows.
struct CodeTagTable {
  std::uint64_t messages = 0;
  std::uint64_t n = 0;
  std::vector<std::uint32_t> tags;  // messages x n, row-major
};

CodeTagTable build_code_tags(const CodeSpec& spec) {
  const std::uint64_t messages =
      pow_checked(spec.field().q(), spec.k(), kEnumBudget);
  if (messages > kEnumBudget)
    throw EnumerationError("q^k too large to enumerate");
  const std::uint64_t pairs = messages * (messages - 1);
  if (pairs == 0) throw ParamError("need at least two distinct messages");
  if (pairs > kEnumBudget / spec.n())
    throw EnumerationError("q^k (q^k - 1) n exceeds the enumeration budget");
  CodeTagTable table;
  table.messages = messages;
  table.n = spec.n();
  table.tags.resize(messages * spec.n());
  for (std::uint64_t v = 0; v < messages; ++v) {
    const FieldVector u = unrank_message(spec.field(), spec.k(), v);
    for (std::uint64_t i = 0; i < spec.n(); ++i)
      table.tags[v * spec.n() + i] = compute_tag(spec, u, i);
  }
  return table;
}

TrialReport exhaustive_code_report(const CodeTrialScheme& scheme,
                                   bool parallel) {
  if (scheme.ell != 1)
    throw ParamError("exhaustive mode enumerates single-tag words (ell = 1)");
  const CodeTagTable table = build_code_tags(scheme.spec);
  const std::uint64_t msgs = table.messages;
  const std::uint64_t n = table.n;

  std::uint64_t total_accepts = 0;
  std::uint64_t worst_matches = 0;

  const auto pair_worker = [&](std::uint64_t a, std::uint64_t& accepts_out,
                               std::uint64_t& worst_out) {
    const std::uint32_t* row_a = table.tags.data() + a * n;
    for (std::uint64_t b = 0; b < msgs; ++b) {
      if (b == a) continue;
      const std::uint32_t* row_b = table.tags.data() + b * n;
      std::uint64_t matches = 0;
      for (std::uint64_t i = 0; i < n; ++i)
        matches += (row_a[i] == row_b[i]);
      accepts_out += matches;
      if (matches > worst_out) worst_out = matches;
    }
  };

  if (parallel) {
#pragma omp parallel for reduction(+ : total_accepts) \
    reduction(max : worst_matches) schedule(static)
    for (std::int64_t a = 0; a < static_cast<std::int64_t>(msgs); ++a) {
      std::uint64_t acc = 0, worst = 0;
      pair_worker(static_cast<std::uint64_t>(a), acc, worst);
      total_accepts += acc;
      if (worst > worst_matches) worst_matches = worst;
    }
  } else {
    for (std::uint64_t a = 0; a < msgs; ++a)
      pair_worker(a, total_accepts, worst_matches);
  }

  TrialReport report;
  report.exhaustive = true;
  report.trials = msgs * (msgs - 1) * n;
  report.accepts = total_accepts;
  report.p_hat = static_cast<double>(total_accepts) /
                 static_cast<double>(report.trials);
  report.ci_low = report.p_hat;
  report.ci_high = report.p_hat;
  report.reference = 1.0 / static_cast<double>(scheme.spec.field().q());
  report.covered = report.reference >= report.ci_low &&
                   report.reference <= report.ci_high;
  report.worst_rate =
      static_cast<double>(worst_matches) / static_cast<double>(n);
  return report;
}

TrialReport exhaustive_prng_report(const PrngScheme& scheme, bool parallel) {
  const std::uint64_t msgs =
      pow_checked(scheme.field().q(), scheme.k(), kEnumBudget);
  if (msgs > kEnumBudget)
    throw EnumerationError("q^k too large to enumerate");
  const std::uint64_t seeds =
      pow_checked(scheme.field().q(), scheme.mu(), kEnumBudget);
  if (seeds > kEnumBudget)
    throw EnumerationError("q^mu too large to enumerate");
  const std::uint64_t pairs = msgs * (msgs - 1);
  if (pairs == 0) throw ParamError("need at least two distinct messages");
  if (msgs > (1u << 10))
    throw EnumerationError("q^k too large for the pair accept table");
  if (pairs > kEnumBudget / seeds)
    throw EnumerationError(
        "q^k (q^k - 1) q^mu exceeds the enumeration budget");

  std::vector<FieldVector> messages;
  messages.reserve(msgs);
  for (std::uint64_t v = 0; v < msgs; ++v)
    messages.push_back(unrank_message(scheme.field(), scheme.k(), v));

  // accept counts per ordered pair, indexed a * msgs + b
  std::vector<std::uint64_t> pair_accepts(msgs * msgs, 0);

  const auto seed_worker = [&](std::uint64_t s,
                               std::vector<std::uint64_t>& accepts_out) {
    const FieldVector seed =
        unrank_message(scheme.field(), scheme.mu(), s);
    const auto columns = build_tag_matrix(scheme, seed);
    // tags per message
    std::vector<std::uint32_t> tags(msgs * scheme.ell());
    for (std::uint64_t v = 0; v < msgs; ++v)
      for (std::uint32_t j = 0; j < scheme.ell(); ++j)
        tags[v * scheme.ell() + j] = dot(messages[v], columns[j]);
    for (std::uint64_t a = 0; a < msgs; ++a) {
      for (std::uint64_t b = 0; b < msgs; ++b) {
        if (a == b) continue;
        bool all = true;
        for (std::uint32_t j = 0; j < scheme.ell(); ++j) {
          if (tags[a * scheme.ell() + j] != tags[b * scheme.ell() + j]) {
            all = false;
            break;
          }
        }
        accepts_out[a * msgs + b] += all;
      }
    }
  };

  if (parallel) {
#pragma omp parallel
    {
      std::vector<std::uint64_t> local(msgs * msgs, 0);
#pragma omp for schedule(static)
      for (std::int64_t s = 0; s < static_cast<std::int64_t>(seeds); ++s)
        seed_worker(static_cast<std::uint64_t>(s), local);
#pragma omp critical
      {
        for (std::size_t i = 0; i < local.size(); ++i)
          pair_accepts[i] += local[i];
      }
    }
  } else {
    for (std::uint64_t s = 0; s < seeds; ++s) seed_worker(s, pair_accepts);
  }

  std::uint64_t total = 0;
  std::uint64_t worst = 0;
  for (std::uint64_t a = 0; a < msgs; ++a) {
    for (std::uint64_t b = 0; b < msgs; ++b) {
      if (a == b) continue;
      const std::uint64_t c = pair_accepts[a * msgs + b];
      total += c;
      if (c > worst) worst = c;
    }
  }

  TrialReport report;
  report.exhaustive = true;
  report.trials = pairs * seeds;
  report.accepts = total;
  report.p_hat =
      static_cast<double>(total) / static_cast<double>(report.trials);
  report.ci_low = report.p_hat;
  report.ci_high = report.p_hat;
  report.reference = std::pow(static_cast<double>(scheme.field().q()),
                              -static_cast<double>(scheme.ell()));
  report.covered = report.reference >= report.ci_low &&
                   report.reference <= report.ci_high;
  report.worst_rate = static_cast<double>(worst) / static_cast<double>(seeds);
  return report;
}

TrialReport exhaustive_report(const TrialConfig& config, bool parallel) {
  if (config.same_message)
    throw ParamError("exhaustive mode enumerates distinct pairs only");
  if (std::holds_alternative<std::monostate>(config.scheme))
    throw ParamError("trial config has no scheme");
  if (const auto* c = std::get_if<CodeTrialScheme>(&config.scheme))
    return exhaustive_code_report(*c, parallel);
  return exhaustive_prng_report(
      std::get<PrngTrialScheme>(config.scheme).scheme, parallel);
}

}  // namespace

TrialReport estimate_false_accept(const TrialConfig& config) {
  if (config.mode == TrialMode::worst_pair_exhaustive)
    return exhaustive_report(config, true);
  check_random_config(config);
  const SchemeShape shape = shape_of(config);
  const auto root = trial_root(config.master_seed);

  std::uint64_t accepts = 0;
#pragma omp parallel for reduction(+ : accepts) schedule(static)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(config.trials);
       ++t) {
    accepts += run_pair_trial(config, shape, root,
                              static_cast<std::uint64_t>(t));
  }
  return finish_random_report(config, shape, accepts);
}

TrialReport estimate_false_accept_serial(const TrialConfig& config) {
  if (config.mode == TrialMode::worst_pair_exhaustive)
    return exhaustive_report(config, false);
  check_random_config(config);
  const SchemeShape shape = shape_of(config);
  const auto root = trial_root(config.master_seed);

  std::uint64_t accepts = 0;
  for (std::uint64_t t = 0; t < config.trials; ++t)
    accepts += run_pair_trial(config, shape, root, t);
  return finish_random_report(config, shape, accepts);
}

namespace {

struct ColumnTable {
  std::uint64_t n = 0;
  std::uint32_t k = 0;
  std::vector<std::uint32_t> cols;  // n x k, row per column
};

ColumnTable materialize_columns(const CodeSpec& spec) {
  const std::uint64_t messages =
      pow_checked(spec.field().q(), spec.k(), 1ull << 20);
  if (messages > (1ull << 20))
    throw EnumerationError("q^k too large to enumerate (limit 2^20)");
  if (spec.n() > kEnumBudget / messages)
    throw EnumerationError("q^k n exceeds the enumeration budget");
  ColumnTable table;
  table.n = spec.n();
  table.k = spec.k();
  table.cols.resize(spec.n() * spec.k());
  for (std::uint64_t i = 0; i < spec.n(); ++i) {
    const FieldVector col = derive_column(spec, i);
    for (std::uint32_t j = 0; j < spec.k(); ++j)
      table.cols[i * spec.k() + j] = col[j];
  }
  return table;
}

std::uint32_t codeword_weight(const Field& f, const ColumnTable& table,
                              std::uint64_t message_index) {
  // digits of the message in base q
  std::uint32_t digits[64];
  std::uint64_t v = message_index;
  for (std::uint32_t j = 0; j < table.k; ++j) {
    digits[j] = static_cast<std::uint32_t>(v % f.q());
    v /= f.q();
  }
  std::uint32_t weight = 0;
  for (std::uint64_t i = 0; i < table.n; ++i) {
    const std::uint32_t* col = table.cols.data() + i * table.k;
    std::uint32_t acc = 0;
    for (std::uint32_t j = 0; j < table.k; ++j)
      acc = f.add(acc, f.mul(digits[j], col[j]));
    weight += (acc != 0);
  }
  return weight;
}

}  // namespace

DistanceReport min_distance(const CodeSpec& spec) {
  if (spec.k() > 64) throw EnumerationError("k too large to enumerate");
  const ColumnTable table = materialize_columns(spec);
  const Field& f = spec.field();
  const std::uint64_t messages = [&] {
    std::uint64_t v = 1;
    for (std::uint32_t j = 0; j < spec.k(); ++j) v *= f.q();
    return v;
  }();

  std::uint32_t dmin = static_cast<std::uint32_t>(table.n) + 1;
#pragma omp parallel for reduction(min : dmin) schedule(static)
  for (std::int64_t v = 1; v < static_cast<std::int64_t>(messages); ++v) {
    const std::uint32_t w =
        codeword_weight(f, table, static_cast<std::uint64_t>(v));
    if (w < dmin) dmin = w;
  }
  DistanceReport report;
  report.distance = (dmin > table.n) ? 0 : dmin;
  report.degenerate = report.distance == 0;
  return report;
}

DistanceReport min_distance_serial(const CodeSpec& spec) {
  if (spec.k() > 64) throw EnumerationError("k too large to enumerate");
  const ColumnTable table = materialize_columns(spec);
  const Field& f = spec.field();
  std::uint64_t messages = 1;
  for (std::uint32_t j = 0; j < spec.k(); ++j) messages *= f.q();

  std::uint32_t dmin = static_cast<std::uint32_t>(table.n) + 1;
  for (std::uint64_t v = 1; v < messages; ++v) {
    const std::uint32_t w = codeword_weight(f, table, v);
    if (w < dmin) dmin = w;
  }
  DistanceReport report;
  report.distance = (dmin > table.n) ? 0 : dmin;
  report.degenerate = report.distance == 0;
  return report;
}

namespace {

VgSampleReport vg_sample_impl(const Field& field, std::uint64_t n,
                              double delta, double eps,
                              std::uint64_t samples,
                              std::span<const std::uint8_t> master_seed,
                              bool parallel) {
  if (samples == 0) throw ParamError("vg_sample: samples must be positive");
  if (master_seed.empty())
    throw ParamError("vg_sample: master seed must be non-empty");
  if (n > 0xFFFFFFFFull) throw ParamError("vg_sample: n must fit 32 bits");
  const std::uint64_t k = vg_dimension(field.q(), n, delta, eps);
  if (k > 0xFFFF) throw ParamError("vg_sample: planned k does not fit");
  // Enumeration budget is per sample; check it once up front so the
  // parallel loop below cannot throw.
  const std::uint64_t msgs =
      pow_checked(field.q(), static_cast<std::uint32_t>(k), 1ull << 20);
  if (msgs > (1ull << 20))
    throw EnumerationError("vg_sample: q^k too large to enumerate");
  if (n > kEnumBudget / msgs)
    throw EnumerationError("vg_sample: q^k n exceeds the enumeration budget");
  // smallest distance that certifies d/n >= delta
  const std::uint32_t threshold = static_cast<std::uint32_t>(
      std::ceil(delta * static_cast<double>(n) - 1e-9));

  const auto sample_success = [&](std::uint64_t s) -> bool {
    const auto be = u64_be(s);
    const auto key = derive_key("idkit.experiments.vg-key.v1",
                                {master_seed, std::span<const std::uint8_t>(
                                                  be.data(), be.size())});
    const CodeSpec spec(field, static_cast<std::uint32_t>(k), n, key);
    const DistanceReport d = min_distance_serial(spec);
    return d.distance >= threshold;
  };

  std::uint64_t successes = 0;
  if (parallel) {
#pragma omp parallel for reduction(+ : successes) schedule(static)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(samples); ++s)
      successes += sample_success(static_cast<std::uint64_t>(s));
  } else {
    for (std::uint64_t s = 0; s < samples; ++s)
      successes += sample_success(s);
  }

  VgSampleReport report;
  report.samples = samples;
  report.successes = successes;
  report.fraction =
      static_cast<double>(successes) / static_cast<double>(samples);
  const VgSuccess bound = vg_success_probability(field.q(), n, eps);
  report.bound_p = bound.p;
  report.bound_vacuous = !(bound.p > 0.0);
  report.k = k;
  report.distance_threshold = threshold;
  return report;
}

}  // namespace

VgSampleReport vg_sample(const Field& field, std::uint64_t n, double delta,
                         double eps, std::uint64_t samples,
                         std::span<const std::uint8_t> master_seed) {
  return vg_sample_impl(field, n, delta, eps, samples, master_seed, true);
}

VgSampleReport vg_sample_serial(const Field& field, std::uint64_t n,
                                double delta, double eps,
                                std::uint64_t samples,
                                std::span<const std::uint8_t> master_seed) {
  return vg_sample_impl(field, n, delta, eps, samples, master_seed, false);
}

}  // namespace idkit
