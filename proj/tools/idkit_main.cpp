// idkit: message identification over random linear codes and seeded
// generators. Subcommands: plan, send, verify, simulate, attack-lfsr,
// serve, call.
//
// Exit codes: 0 success/ACCEPT, 1 REJECT, 2 usage error, 3 runtime error
// (timeouts included).

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "idkit/bits.hpp"
#include "idkit/bounds.hpp"
#include "idkit/code.hpp"
#include "idkit/experiments.hpp"
#include "idkit/net.hpp"
#include "idkit/prng_ident.hpp"
#include "idkit/wire.hpp"

namespace {

using namespace idkit;

constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Ordered key=value sink; table mode aligns, kv mode is one pair per line
// and byte-stable for a fixed seed.
class Report {
 public:
  explicit Report(bool kv) : kv_(kv) {}

  void add(const std::string& key, const std::string& value) {
    rows_.emplace_back(key, value);
  }
  void add(const std::string& key, double value) { add(key, fmt_double(value)); }
  void add(const std::string& key, std::uint64_t value) {
    add(key, std::to_string(value));
  }
  void add_bool(const std::string& key, bool value) {
    add(key, std::string(value ? "true" : "false"));
  }

  void print() const {
    if (kv_) {
      for (const auto& [k, v] : rows_) std::cout << k << "=" << v << "\n";
      return;
    }
    std::size_t width = 0;
    for (const auto& [k, v] : rows_) width = std::max(width, k.size());
    for (const auto& [k, v] : rows_)
      std::cout << k << std::string(width - k.size() + 2, ' ') << v << "\n";
  }

 private:
  bool kv_;
  std::vector<std::pair<std::string, std::string>> rows_;
};

struct GlobalOpts {
  std::string seed_hex;
  std::string output = "table";
};

std::unique_ptr<RandomSource> make_rng(const GlobalOpts& g,
                                       const char* context) {
  if (!g.seed_hex.empty())
    return std::make_unique<SeededRandom>(from_hex(g.seed_hex),
                                          "idkit.cli.v1");
  std::cerr << "note: " << context
            << " is using system entropy; pass --seed HEX to reproduce\n";
  return std::make_unique<SystemRandom>();
}

std::vector<std::uint8_t> master_seed_bytes(const GlobalOpts& g) {
  if (!g.seed_hex.empty()) return from_hex(g.seed_hex);
  SystemRandom sys;
  std::vector<std::uint8_t> seed(16);
  sys.fill(seed);
  std::cerr << "note: no --seed given; drew master seed "
            << to_hex(seed) << "\n";
  return seed;
}

// Scheme flags shared by send/verify/simulate/serve/call.
struct SchemeOpts {
  std::string scheme = "code";
  int m = 8;
  std::uint32_t k = 0;
  std::uint32_t ell = 1;
  // code
  std::uint64_t n = 0;
  std::string key_hex;
  // prng
  std::uint32_t mu = 0;
  std::string generator = "nonlinear-default";
  std::vector<std::uint32_t> taps;
};

void add_scheme_flags(CLI::App* cmd, SchemeOpts& s, bool code_needs_ell) {
  cmd->add_option("--scheme", s.scheme, "code | prng")
      ->check(CLI::IsMember({"code", "prng"}));
  cmd->add_option("--m", s.m, "field degree: symbols live in GF(2^m)")
      ->check(CLI::Range(1, 16));
  cmd->add_option("--k", s.k, "message length in symbols")->required();
  cmd->add_option("--ell", s.ell,
                  code_needs_ell ? "tag pairs per word"
                                 : "tag symbols per word");
  cmd->add_option("--n", s.n, "code scheme: number of columns");
  cmd->add_option("--key", s.key_hex, "code scheme: shared key, hex");
  cmd->add_option("--mu", s.mu, "prng scheme: seed length in symbols");
  cmd->add_option("--generator", s.generator,
                  "prng scheme: nonlinear-default | lfsr");
  cmd->add_option("--a", s.taps,
                  "prng scheme, lfsr generator: feedback taps a_1..a_mu")
      ->delimiter(',');
}

AnyScheme build_scheme(const SchemeOpts& s) {
  const Field& f = Field::get(s.m);
  if (s.scheme == "code") {
    if (s.n == 0)
      throw CLI::ValidationError("--n", "code scheme needs --n >= 1");
    const std::vector<std::uint8_t> key =
        s.key_hex.empty() ? std::vector<std::uint8_t>{} : from_hex(s.key_hex);
    return CodeSpec(f, s.k, s.n, key);
  }
  if (s.mu == 0)
    throw CLI::ValidationError("--mu", "prng scheme needs --mu >= 1");
  const auto gen = generator_from_name(s.generator);
  if (!gen)
    throw CLI::ValidationError("--generator",
                               "unknown generator " + s.generator);
  if (*gen == Generator::lfsr) {
    if (s.taps.size() != s.mu)
      throw CLI::ValidationError("--a", "need exactly mu feedback taps");
    return PrngScheme::with_lfsr(f, s.k, s.ell, LfsrSpec(f, s.taps));
  }
  return PrngScheme::nonlinear(f, s.k, s.ell, s.mu);
}

void warn_if_unsound(const AnyScheme& scheme) {
  if (const auto* p = std::get_if<PrngScheme>(&scheme)) {
    if (!p->construction_warning().empty())
      std::cerr << "warning: " << p->construction_warning() << "\n";
  }
}

FieldVector parse_message(const Field& f, std::uint32_t k,
                          const std::string& hex) {
  return unpack_symbols(f, k, from_hex(hex));
}

int exit_for(const VerifyResult& r) {
  return r.accepted ? kExitAccept : kExitReject;
}

// ---------------------------------------------------------------------------

int run_plan(const GlobalOpts& g, std::uint64_t q, std::uint64_t n,
             std::optional<double> delta, std::optional<std::uint32_t> delta_inv,
             std::optional<double> eps, std::optional<std::int32_t> eps_exp,
             std::uint32_t ell) {
  double d;
  if (delta && delta_inv)
    throw CLI::ValidationError("--delta", "give --delta or --delta-inv");
  if (delta_inv)
    d = 1.0 - 1.0 / static_cast<double>(*delta_inv);
  else if (delta)
    d = *delta;
  else
    throw CLI::ValidationError("--delta", "give --delta or --delta-inv");

  double e;
  if (eps && eps_exp)
    throw CLI::ValidationError("--eps", "give --eps or --eps-exp");
  if (eps_exp)
    e = std::ldexp(1.0, -std::abs(*eps_exp));  // any valid eps is below 1
  else if (eps)
    e = *eps;
  else
    throw CLI::ValidationError("--eps", "give --eps or --eps-exp");

  const ParamSet p = plan_parameters(q, n, d, e, ell);
  Report r(g.output == "kv");
  r.add("q", p.q);
  r.add("n", p.n);
  r.add("k", p.k);
  r.add("delta", p.delta);
  r.add("eps", p.eps);
  r.add("ell", std::uint64_t(p.ell));
  r.add("code_rate", p.code_rate);
  r.add("lambda2", p.lambda2);
  r.add("lambda2_ell", p.lambda2_ell);
  r.add("word_bits", p.word_bits);
  r.add("rate", p.ident_rate);
  r.add("message_bits", p.message_bits);
  r.add("success_p", p.success_p);
  r.add("log10_one_minus_P", -p.neg_log10_one_minus_p);
  r.print();
  return kExitAccept;
}

int run_send(const GlobalOpts& g, const SchemeOpts& s,
             const std::string& u_hex) {
  const AnyScheme scheme = build_scheme(s);
  warn_if_unsound(scheme);
  const Field& f = Field::get(s.m);
  const FieldVector u = parse_message(f, s.k, u_hex);
  auto rng = make_rng(g, "send");

  Report r(g.output == "kv");
  std::vector<std::uint8_t> bytes;
  if (const auto* spec = std::get_if<CodeSpec>(&scheme)) {
    const CodeIdentWord word = send(*spec, u, s.ell, *rng);
    bytes = encode_word(to_wire(*spec, word));
    r.add("scheme", std::string("code"));
    for (std::size_t j = 0; j < word.indices.size(); ++j) {
      r.add("index_" + std::to_string(j), word.indices[j]);
      r.add("tag_" + std::to_string(j), std::uint64_t(word.tags[j]));
    }
  } else {
    const auto& ps = std::get<PrngScheme>(scheme);
    const PrngIdentWord word = prng_send(ps, u, *rng);
    bytes = encode_word(to_wire(ps, word));
    r.add("scheme", std::string("prng"));
    r.add("sigma", to_hex(pack_symbols(word.seed)));
    r.add("tau", to_hex(pack_symbols(word.tags)));
  }
  r.add("word", to_hex(bytes));
  r.print();
  return kExitAccept;
}

int run_verify(const GlobalOpts& g, const SchemeOpts& s,
               const std::string& u_hex, const std::string& word_hex) {
  const AnyScheme scheme = build_scheme(s);
  warn_if_unsound(scheme);
  const Field& f = Field::get(s.m);
  const FieldVector u = parse_message(f, s.k, u_hex);

  Report r(g.output == "kv");
  VerifyResult result = VerifyResult::reject_malformed("");
  try {
    const WireWord wire = decode_word(from_hex(word_hex));
    if (const auto* spec = std::get_if<CodeSpec>(&scheme)) {
      const auto* w = std::get_if<CodeWireWord>(&wire);
      if (w == nullptr || w->m != f.m() || w->k != spec->k() ||
          w->n != spec->n()) {
        result = VerifyResult::reject_malformed("word does not match scheme");
      } else {
        result = verify(*spec, u, w->word);
      }
    } else {
      const auto& ps = std::get<PrngScheme>(scheme);
      const auto* w = std::get_if<PrngWireWord>(&wire);
      if (w == nullptr || w->m != f.m() || w->k != ps.k() ||
          w->ell != ps.ell() || w->mu != ps.mu() ||
          w->generator != ps.generator()) {
        result = VerifyResult::reject_malformed("word does not match scheme");
      } else {
        const PrngIdentWord word{FieldVector(f, std::vector<std::uint32_t>(
                                                   w->seed)),
                                 FieldVector(f, std::vector<std::uint32_t>(
                                                   w->tags))};
        result = prng_verify(ps, u, word);
      }
    }
  } catch (const WireFormatError& e) {
    result = VerifyResult::reject_malformed(
        std::string(wire_error_name(e.reason())) + ": " + e.what());
  }

  r.add("result", std::string(result.accepted ? "accept" : "reject"));
  r.add("reason", std::string(verify_reason_name(result.reason)));
  if (!result.detail.empty()) r.add("detail", result.detail);
  r.print();
  return exit_for(result);
}

int run_simulate(const GlobalOpts& g, const SchemeOpts& s,
                 const std::string& mode, std::uint64_t trials,
                 std::uint64_t samples, bool same_message, bool serial,
                 std::optional<double> delta, std::optional<double> eps,
                 int jobs) {
  if (jobs > 0) omp_set_num_threads(jobs);
  Report r(g.output == "kv");

  if (mode == "vg-sample") {
    if (!delta || !eps)
      throw CLI::ValidationError("--mode",
                                 "vg-sample needs --delta and --eps");
    const Field& f = Field::get(s.m);
    const auto seed = master_seed_bytes(g);
    const VgSampleReport rep =
        serial ? vg_sample_serial(f, s.n, *delta, *eps, samples, seed)
               : vg_sample(f, s.n, *delta, *eps, samples, seed);
    r.add("mode", std::string("vg-sample"));
    r.add("q", std::uint64_t(f.q()));
    r.add("n", s.n);
    r.add("k", rep.k);
    r.add("delta", *delta);
    r.add("eps", *eps);
    r.add("samples", rep.samples);
    r.add("successes", rep.successes);
    r.add("fraction", rep.fraction);
    r.add("distance_threshold", std::uint64_t(rep.distance_threshold));
    r.add("bound_p", rep.bound_p);
    r.add_bool("bound_vacuous", rep.bound_vacuous);
    r.print();
    return kExitAccept;
  }

  const AnyScheme scheme = build_scheme(s);
  warn_if_unsound(scheme);
  TrialConfig config;
  if (const auto* spec = std::get_if<CodeSpec>(&scheme))
    config.scheme = CodeTrialScheme{*spec, s.ell};
  else
    config.scheme = PrngTrialScheme{std::get<PrngScheme>(scheme)};
  config.same_message = same_message;

  if (mode == "random-pairs") {
    config.mode = TrialMode::random_pairs;
    config.trials = trials;
    config.master_seed = master_seed_bytes(g);
  } else {
    config.mode = TrialMode::worst_pair_exhaustive;
  }

  const TrialReport rep = serial ? estimate_false_accept_serial(config)
                                 : estimate_false_accept(config);
  r.add("mode", mode);
  r.add("scheme", s.scheme);
  r.add("q", std::uint64_t(Field::get(s.m).q()));
  r.add("ell", std::uint64_t(s.ell));
  r.add("trials", rep.trials);
  r.add("accepts", rep.accepts);
  r.add("p_hat", rep.p_hat);
  r.add("ci_low", rep.ci_low);
  r.add("ci_high", rep.ci_high);
  r.add("reference", rep.reference);
  r.add_bool("covered", rep.covered);
  r.add_bool("exhaustive", rep.exhaustive);
  if (rep.exhaustive) r.add("worst_rate", rep.worst_rate);
  r.print();
  return kExitAccept;
}

int run_attack_lfsr(const GlobalOpts& g, int m, std::uint32_t k,
                    std::uint32_t ell, const std::vector<std::uint32_t>& taps,
                    std::optional<std::uint32_t> mu,
                    const std::string& seeds_arg) {
  const Field& f = Field::get(m);
  if (mu && *mu != taps.size())
    throw CLI::ValidationError("--mu",
                               "does not match the number of taps in --a");
  const LfsrSpec lfsr(f, taps);
  const PrngScheme scheme = PrngScheme::with_lfsr(f, k, ell, lfsr);
  warn_if_unsound(scheme);
  const MessagePair pair = lfsr_forgery_pair(lfsr, k);

  std::uint64_t total = 0;
  std::uint64_t accepted = 0;
  if (seeds_arg == "all") {
    std::uint64_t seeds = 1;
    for (std::uint32_t i = 0; i < lfsr.mu(); ++i) {
      seeds *= f.q();
      if (seeds > (1ull << 16))
        throw CLI::ValidationError(
            "--seeds", "q^mu > 2^16; pass a sample count instead of `all`");
    }
    for (std::uint64_t sidx = 0; sidx < seeds; ++sidx) {
      FieldVector seed(f, lfsr.mu());
      std::uint64_t v = sidx;
      for (std::uint32_t i = 0; i < lfsr.mu(); ++i) {
        seed.set(i, static_cast<std::uint32_t>(v % f.q()));
        v /= f.q();
      }
      const auto columns = build_tag_matrix(scheme, seed);
      FieldVector tags(f, scheme.ell());
      for (std::uint32_t j = 0; j < scheme.ell(); ++j)
        tags.set(j, dot(pair.u, columns[j]));
      const PrngIdentWord word{seed, tags};
      accepted += prng_verify(scheme, pair.u_prime, word).accepted;
      ++total;
    }
  } else {
    std::uint64_t count = 0;
    for (char c : seeds_arg) {
      if (c < '0' || c > '9')
        throw CLI::ValidationError("--seeds", "pass `all` or a count");
      count = count * 10 + static_cast<std::uint64_t>(c - '0');
    }
    if (count == 0) throw CLI::ValidationError("--seeds", "count must be >= 1");
    auto rng = make_rng(g, "attack-lfsr");
    for (std::uint64_t t = 0; t < count; ++t) {
      const PrngIdentWord word = prng_send(scheme, pair.u, *rng);
      accepted += prng_verify(scheme, pair.u_prime, word).accepted;
      ++total;
    }
  }

  const double lambda2 =
      static_cast<double>(accepted) / static_cast<double>(total);
  if (g.output == "kv") {
    Report r(true);
    r.add("m", std::uint64_t(m));
    r.add("mu", std::uint64_t(lfsr.mu()));
    r.add("k", std::uint64_t(k));
    r.add("ell", std::uint64_t(ell));
    r.add("u", to_hex(pack_symbols(pair.u)));
    r.add("u_prime", to_hex(pack_symbols(pair.u_prime)));
    r.add("seeds", total);
    r.add("accepted", accepted);
    r.add("lambda2", lambda2);
    r.print();
  } else {
    std::cout << "forged pair: u=" << to_hex(pack_symbols(pair.u))
              << " u'=" << to_hex(pack_symbols(pair.u_prime)) << "\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", lambda2);
    std::cout << "accepted " << accepted << "/" << total
              << " seeds, lambda2=" << buf << "\n";
  }
  return kExitAccept;
}

int run_serve(const GlobalOpts&, const SchemeOpts& s,
              const std::string& endpoint_arg, const std::string& registry_path,
              int workers) {
  const AnyScheme scheme = build_scheme(s);
  warn_if_unsound(scheme);
  const Field& f = Field::get(s.m);
  Registry registry = Registry::load(f, s.k, registry_path);
  const Endpoint endpoint = parse_endpoint(endpoint_arg);
  std::cerr << "serving " << registry.size() << " identities on "
            << endpoint.host << ":" << endpoint.port << "\n";
  responder_serve(scheme, std::move(registry), endpoint, workers);
  return kExitAccept;  // unreachable
}

int run_call(const GlobalOpts& g, const SchemeOpts& s,
             const std::string& endpoint_arg, const std::string& label,
             const std::string& u_hex, const std::string& registry_path,
             std::uint32_t timeout_ms, int retries) {
  const AnyScheme scheme = build_scheme(s);
  warn_if_unsound(scheme);
  const Field& f = Field::get(s.m);

  std::optional<FieldVector> u;
  if (!u_hex.empty()) {
    u = parse_message(f, s.k, u_hex);
  } else if (!registry_path.empty()) {
    const Registry registry = Registry::load(f, s.k, registry_path);
    const FieldVector* found = registry.find(label);
    if (found == nullptr)
      throw ParamError("label not present in the registry: " + label);
    u = *found;
  } else {
    throw CLI::ValidationError("--u", "give --u HEX or --registry FILE");
  }

  auto rng = make_rng(g, "call");
  CallOptions options;
  options.ell = s.ell;
  options.timeout = std::chrono::milliseconds(timeout_ms);
  options.retries = retries;
  const CallResult result = caller_call(parse_endpoint(endpoint_arg), label,
                                        scheme, *u, options, *rng);

  Report r(g.output == "kv");
  const char* status = result.status == CallStatus::accept   ? "accept"
                       : result.status == CallStatus::reject ? "reject"
                                                             : "timeout";
  r.add("result", std::string(status));
  r.add("reason", std::uint64_t(result.reason));
  r.print();
  if (result.status == CallStatus::accept) return kExitAccept;
  if (result.status == CallStatus::reject) return kExitReject;
  return kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"message identification toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed_hex,
                 "hex master seed for deterministic randomness")
      ->envname("IDKIT_SEED");
  app.add_option("--output", g.output, "table | kv")
      ->check(CLI::IsMember({"table", "kv"}));

  // plan
  auto* plan = app.add_subcommand("plan", "derive code parameters");
  std::uint64_t plan_q = 0, plan_n = 0;
  std::optional<double> plan_delta, plan_eps;
  std::optional<std::uint32_t> plan_delta_inv;
  std::optional<std::int32_t> plan_eps_exp;
  std::uint32_t plan_ell = 1;
  plan->add_option("--q", plan_q, "field size (power of 2)")->required();
  plan->add_option("--n", plan_n, "code length")->required();
  plan->add_option("--delta", plan_delta, "distance fraction target");
  plan->add_option("--delta-inv", plan_delta_inv,
                   "delta = 1 - 1/DELTA_INV (dyadic shorthand)");
  plan->add_option("--eps", plan_eps, "rate slack below the VG rate");
  plan->add_option("--eps-exp", plan_eps_exp,
                   "eps = 2^-|EPS_EXP| (dyadic shorthand)");
  plan->add_option("--ell", plan_ell, "word repetitions");

  // send
  auto* send_cmd = app.add_subcommand("send", "produce an identification word");
  SchemeOpts send_s;
  std::string send_u;
  add_scheme_flags(send_cmd, send_s, true);
  send_cmd->add_option("--u", send_u, "message, hex of packed symbols")
      ->required();

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "check a word against a message");
  SchemeOpts verify_s;
  std::string verify_u, verify_word;
  add_scheme_flags(verify_cmd, verify_s, true);
  verify_cmd->add_option("--u", verify_u, "expected message, hex")->required();
  verify_cmd->add_option("--word", verify_word, "encoded word, hex")
      ->required();

  // simulate
  auto* sim = app.add_subcommand("simulate", "run identification experiments");
  SchemeOpts sim_s;
  std::string sim_mode = "random-pairs";
  std::uint64_t sim_trials = 10000, sim_samples = 100;
  bool sim_same = false, sim_serial = false;
  std::optional<double> sim_delta, sim_eps;
  int sim_jobs = 0;
  add_scheme_flags(sim, sim_s, true);
  sim->get_option("--k")->required(false);
  sim->add_option("--mode", sim_mode, "random-pairs | worst-pair-exhaustive | vg-sample")
      ->check(CLI::IsMember(
          {"random-pairs", "worst-pair-exhaustive", "vg-sample"}));
  sim->add_option("--trials", sim_trials, "random-pairs trial count");
  sim->add_option("--samples", sim_samples, "vg-sample draw count");
  sim->add_flag("--same-message", sim_same,
                "verify against the sender's own message");
  sim->add_flag("--serial", sim_serial, "use the serial reference kernels");
  sim->add_option("--delta", sim_delta, "vg-sample distance fraction");
  sim->add_option("--eps", sim_eps, "vg-sample rate slack");
  sim->add_option("--jobs", sim_jobs, "worker threads (0 = library default)");

  // attack-lfsr
  auto* attack = app.add_subcommand(
      "attack-lfsr", "forge a message pair against an lfsr generator");
  int att_m = 1;
  std::uint32_t att_k = 0, att_ell = 1;
  std::vector<std::uint32_t> att_taps;
  std::optional<std::uint32_t> att_mu;
  std::string att_seeds = "all";
  attack->add_option("--m", att_m, "field degree")->check(CLI::Range(1, 16));
  attack->add_option("--k", att_k, "message length")->required();
  attack->add_option("--ell", att_ell, "tag symbols per word");
  attack->add_option("--a", att_taps, "feedback taps a_1..a_mu")
      ->required()
      ->delimiter(',');
  attack->add_option("--mu", att_mu,
                     "register length; must equal the tap count");
  attack->add_option("--seeds", att_seeds, "`all` or a sample count");

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "run a datagram responder");
  SchemeOpts serve_s;
  std::string serve_endpoint = "127.0.0.1:0", serve_registry;
  int serve_workers = 2;
  add_scheme_flags(serve_cmd, serve_s, true);
  serve_cmd->add_option("--endpoint", serve_endpoint, "host:port to bind");
  serve_cmd->add_option("--registry", serve_registry, "registry file")
      ->required();
  serve_cmd->add_option("--workers", serve_workers, "worker threads");

  // call
  auto* call_cmd = app.add_subcommand("call", "identify against a responder");
  SchemeOpts call_s;
  std::string call_endpoint, call_label, call_u, call_registry;
  std::uint32_t call_timeout = 1000;
  int call_retries = 0;
  add_scheme_flags(call_cmd, call_s, true);
  call_cmd->add_option("--endpoint", call_endpoint, "responder host:port")
      ->required();
  call_cmd->add_option("--label", call_label, "registry label to claim")
      ->required();
  call_cmd->add_option("--u", call_u, "message, hex (alternative: --registry)");
  call_cmd->add_option("--registry", call_registry,
                       "look the label up in this registry file");
  call_cmd->add_option("--timeout-ms", call_timeout, "per-attempt timeout");
  call_cmd->add_option("--retries", call_retries,
                       "extra attempts with fresh randomness");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);  // prints message / help text
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (plan->parsed())
      return run_plan(g, plan_q, plan_n, plan_delta, plan_delta_inv, plan_eps,
                      plan_eps_exp, plan_ell);
    if (send_cmd->parsed()) return run_send(g, send_s, send_u);
    if (verify_cmd->parsed())
      return run_verify(g, verify_s, verify_u, verify_word);
    if (sim->parsed())
      return run_simulate(g, sim_s, sim_mode, sim_trials, sim_samples,
                          sim_same, sim_serial, sim_delta, sim_eps, sim_jobs);
    if (attack->parsed())
      return run_attack_lfsr(g, att_m, att_k, att_ell, att_taps, att_mu,
                             att_seeds);
    if (serve_cmd->parsed())
      return run_serve(g, serve_s, serve_endpoint, serve_registry,
                       serve_workers);
    if (call_cmd->parsed())
      return run_call(g, call_s, call_endpoint, call_label, call_u,
                      call_registry, call_timeout, call_retries);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
