#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

#include "idkit/wire.hpp"

namespace idkit {

// UDP request/reply frame (integers big-endian):
//   request: corr_id u32 | label_len u8 | label | encoded word
//   reply:   corr_id u32 | status u8 (1 accept, 0 reject) | reason u8
// Reply reasons:
inline constexpr std::uint8_t kReplyOk = 0;
inline constexpr std::uint8_t kReplyTagMismatch = 1;
inline constexpr std::uint8_t kReplyMalformed = 2;
inline constexpr std::uint8_t kReplyUnknownLabel = 3;
inline constexpr std::uint8_t kReplySchemeMismatch = 4;

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;
};
Endpoint parse_endpoint(std::string_view text);  // "host:port"

using AnyScheme = std::variant<CodeSpec, PrngScheme>;

// Stateless datagram verifier: each request names a registry label and the
// responder checks the word against that one identity.
class Responder {
 public:
  struct Stats {
    std::atomic<std::uint64_t> accepted{0};
    std::atomic<std::uint64_t> rejected{0};
    std::atomic<std::uint64_t> malformed{0};
  };

  Responder(AnyScheme scheme, Registry registry);
  ~Responder();

  // Binds (port 0 picks an ephemeral port) and spawns worker threads.
  // Returns the bound port.
  std::uint16_t start(const Endpoint& endpoint, int workers = 2);
  void stop();
  const Stats& stats() const { return stats_; }

  Responder(const Responder&) = delete;
  Responder& operator=(const Responder&) = delete;

  // One datagram in, one reply out; exposed for direct tests.
  std::vector<std::uint8_t> handle(std::span<const std::uint8_t> request);

 private:
  void worker_loop();

  AnyScheme scheme_;
  Registry registry_;
  Stats stats_;
  int fd_ = -1;
  std::atomic<bool> running_{false};
  std::vector<std::thread> workers_;
};

// Blocking convenience wrapper for the CLI.
void responder_serve(AnyScheme scheme, Registry registry,
                     const Endpoint& endpoint, int workers);

enum class CallStatus : std::uint8_t { accept, reject, timeout };

struct CallResult {
  CallStatus status = CallStatus::timeout;
  std::uint8_t reason = 0;
};

struct CallOptions {
  std::uint32_t ell = 1;  // code scheme words per call
  std::chrono::milliseconds timeout{1000};
  int retries = 0;  // extra attempts, each with fresh randomness
};

CallResult caller_call(const Endpoint& endpoint, std::string_view label,
                       const AnyScheme& scheme, const FieldVector& u,
                       const CallOptions& options, RandomSource& rng);

}  // namespace idkit
