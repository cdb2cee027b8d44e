#include "idkit/net.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <string>

#include "idkit/errors.hpp"

namespace idkit {

namespace {

constexpr std::size_t kMaxDatagram = 4096;

sockaddr_in resolve(const Endpoint& endpoint) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_DGRAM;
  addrinfo* res = nullptr;
  const std::string port = std::to_string(endpoint.port);
  const int rc = ::getaddrinfo(endpoint.host.c_str(), port.c_str(), &hints,
                               &res);
  if (rc != 0 || res == nullptr)
    throw NetError("cannot resolve " + endpoint.host + ": " +
                   ::gai_strerror(rc));
  sockaddr_in addr{};
  std::memcpy(&addr, res->ai_addr, sizeof(addr));
  ::freeaddrinfo(res);
  return addr;
}

void set_recv_timeout(int fd, std::chrono::milliseconds ms) {
  timeval tv{};
  tv.tv_sec = static_cast<time_t>(ms.count() / 1000);
  tv.tv_usec = static_cast<suseconds_t>((ms.count() % 1000) * 1000);
  if (::setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv)) != 0)
    throw NetError("setsockopt(SO_RCVTIMEO) failed");
}

std::vector<std::uint8_t> make_reply(std::span<const std::uint8_t> corr,
                                     bool accepted, std::uint8_t reason) {
  std::vector<std::uint8_t> out(corr.begin(), corr.end());
  out.push_back(accepted ? 1 : 0);
  out.push_back(reason);
  return out;
}

}  // namespace

Endpoint parse_endpoint(std::string_view text) {
  const std::size_t colon = text.rfind(':');
  if (colon == std::string_view::npos || colon == 0 ||
      colon + 1 == text.size())
    throw ParamError("endpoint must look like host:port");
  Endpoint out;
  out.host = std::string(text.substr(0, colon));
  const std::string_view port_part = text.substr(colon + 1);
  std::uint32_t port = 0;
  for (char c : port_part) {
    if (c < '0' || c > '9') throw ParamError("endpoint port must be numeric");
    port = port * 10 + static_cast<std::uint32_t>(c - '0');
    if (port > 0xFFFF) throw ParamError("endpoint port out of range");
  }
  out.port = static_cast<std::uint16_t>(port);
  return out;
}

Responder::Responder(AnyScheme scheme, Registry registry)
    : scheme_(std::move(scheme)), registry_(std::move(registry)) {
  const Field* scheme_field = nullptr;
  std::uint32_t scheme_k = 0;
  if (const auto* c = std::get_if<CodeSpec>(&scheme_)) {
    scheme_field = &c->field();
    scheme_k = c->k();
  } else {
    const auto& p = std::get<PrngScheme>(scheme_);
    scheme_field = &p.field();
    scheme_k = p.k();
  }
  if (scheme_field != &registry_.field() || scheme_k != registry_.k())
    throw ParamError("registry entries do not match the scheme");
}

Responder::~Responder() { stop(); }

std::uint16_t Responder::start(const Endpoint& endpoint, int workers) {
  if (running_.load()) throw NetError("responder already running");
  if (workers < 1) throw ParamError("need at least one worker");

  const sockaddr_in addr = resolve(endpoint);
  fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
  if (fd_ < 0) throw NetError("socket() failed");
  if (::bind(fd_, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) !=
      0) {
    ::close(fd_);
    fd_ = -1;
    throw NetError("bind failed: " + std::string(std::strerror(errno)));
  }
  // Workers poll with a short timeout so stop() converges quickly.
  set_recv_timeout(fd_, std::chrono::milliseconds(100));

  sockaddr_in bound{};
  socklen_t len = sizeof(bound);
  if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len) != 0) {
    ::close(fd_);
    fd_ = -1;
    throw NetError("getsockname failed");
  }

  running_.store(true);
  workers_.reserve(static_cast<std::size_t>(workers));
  for (int i = 0; i < workers; ++i)
    workers_.emplace_back([this] { worker_loop(); });
  return ntohs(bound.sin_port);
}

void Responder::stop() {
  if (!running_.exchange(false)) {
    if (fd_ >= 0) {
      ::close(fd_);
      fd_ = -1;
    }
    return;
  }
  for (auto& w : workers_) w.join();
  workers_.clear();
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

void Responder::worker_loop() {
  std::vector<std::uint8_t> buf(kMaxDatagram);
  while (running_.load()) {
    sockaddr_in peer{};
    socklen_t peer_len = sizeof(peer);
    const ssize_t got =
        ::recvfrom(fd_, buf.data(), buf.size(), 0,
                   reinterpret_cast<sockaddr*>(&peer), &peer_len);
    if (got < 0) {
      if (errno == EAGAIN || errno == EWOULDBLOCK || errno == EINTR) continue;
      break;  // socket gone
    }
    const auto reply = handle({buf.data(), static_cast<std::size_t>(got)});
    if (reply.empty()) continue;  // not even a correlation id: drop
    (void)::sendto(fd_, reply.data(), reply.size(), 0,
                   reinterpret_cast<const sockaddr*>(&peer), peer_len);
  }
}

std::vector<std::uint8_t> Responder::handle(
    std::span<const std::uint8_t> request) {
  if (request.size() < 4) return {};  // cannot correlate, drop
  const auto corr = request.subspan(0, 4);
  const auto reject = [&](std::uint8_t reason) {
    if (reason == kReplyTagMismatch)
      stats_.rejected.fetch_add(1);
    else
      stats_.malformed.fetch_add(1);
    return make_reply(corr, false, reason);
  };

  if (request.size() < 5) return reject(kReplyMalformed);
  const std::size_t label_len = request[4];
  if (request.size() < 5 + label_len) return reject(kReplyMalformed);
  if (label_len == 0) return reject(kReplyMalformed);
  const std::string_view label(
      reinterpret_cast<const char*>(request.data() + 5), label_len);
  const auto word_bytes = request.subspan(5 + label_len);
  if (word_bytes.empty()) return reject(kReplyMalformed);

  const FieldVector* expected = registry_.find(label);
  if (expected == nullptr) return reject(kReplyUnknownLabel);

  WireWord wire;
  try {
    wire = decode_word(word_bytes);
  } catch (const WireFormatError&) {
    return reject(kReplyMalformed);
  }

  VerifyResult result = VerifyResult::reject_malformed("scheme mismatch");
  bool scheme_ok = false;
  if (const auto* spec = std::get_if<CodeSpec>(&scheme_)) {
    if (const auto* w = std::get_if<CodeWireWord>(&wire)) {
      if (w->m == spec->field().m() && w->k == spec->k() &&
          w->n == spec->n()) {
        scheme_ok = true;
        result = verify(*spec, *expected, w->word);
      }
    }
  } else {
    const auto& scheme = std::get<PrngScheme>(scheme_);
    if (const auto* w = std::get_if<PrngWireWord>(&wire)) {
      if (w->m == scheme.field().m() && w->k == scheme.k() &&
          w->ell == scheme.ell() && w->mu == scheme.mu() &&
          w->generator == scheme.generator()) {
        scheme_ok = true;
        const PrngIdentWord word{
            FieldVector(scheme.field(),
                        std::vector<std::uint32_t>(w->seed)),
            FieldVector(scheme.field(), std::vector<std::uint32_t>(w->tags))};
        result = prng_verify(scheme, *expected, word);
      }
    }
  }
  if (!scheme_ok) return reject(kReplySchemeMismatch);

  if (result.accepted) {
    stats_.accepted.fetch_add(1);
    return make_reply(corr, true, kReplyOk);
  }
  return reject(result.reason == VerifyResult::Reason::tag_mismatch
                    ? kReplyTagMismatch
                    : kReplyMalformed);
}

void responder_serve(AnyScheme scheme, Registry registry,
                     const Endpoint& endpoint, int workers) {
  Responder responder(std::move(scheme), std::move(registry));
  responder.start(endpoint, workers);
  // Serve until the process is killed.
  while (true) std::this_thread::sleep_for(std::chrono::seconds(3600));
}

CallResult caller_call(const Endpoint& endpoint, std::string_view label,
                       const AnyScheme& scheme, const FieldVector& u,
                       const CallOptions& options, RandomSource& rng) {
  if (label.empty() || label.size() > 0xFF)
    throw ParamError("label must be 1..255 bytes");
  if (options.timeout.count() <= 0)
    throw ParamError("timeout must be positive");
  if (options.retries < 0) throw ParamError("retries must be >= 0");

  const sockaddr_in addr = resolve(endpoint);
  const int fd = ::socket(AF_INET, SOCK_DGRAM, 0);
  if (fd < 0) throw NetError("socket() failed");

  CallResult final_result;
  const int attempts = options.retries + 1;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    // Fresh correlation id and fresh word randomness on every attempt.
    const std::uint32_t corr = rng.next_bits(32);
    std::vector<std::uint8_t> request;
    request.push_back(static_cast<std::uint8_t>(corr >> 24));
    request.push_back(static_cast<std::uint8_t>(corr >> 16));
    request.push_back(static_cast<std::uint8_t>(corr >> 8));
    request.push_back(static_cast<std::uint8_t>(corr));
    request.push_back(static_cast<std::uint8_t>(label.size()));
    request.insert(request.end(), label.begin(), label.end());

    std::vector<std::uint8_t> word_bytes;
    if (const auto* spec = std::get_if<CodeSpec>(&scheme)) {
      word_bytes = encode_word(to_wire(*spec, send(*spec, u, options.ell, rng)));
    } else {
      const auto& s = std::get<PrngScheme>(scheme);
      word_bytes = encode_word(to_wire(s, prng_send(s, u, rng)));
    }
    request.insert(request.end(), word_bytes.begin(), word_bytes.end());

    if (::sendto(fd, request.data(), request.size(), 0,
                 reinterpret_cast<const sockaddr*>(&addr),
                 sizeof(addr)) < 0) {
      ::close(fd);
      throw NetError("sendto failed: " + std::string(std::strerror(errno)));
    }

    const auto deadline =
        std::chrono::steady_clock::now() + options.timeout;
    std::uint8_t buf[64];
    bool answered = false;
    while (std::chrono::steady_clock::now() < deadline) {
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
          deadline - std::chrono::steady_clock::now());
      set_recv_timeout(fd, std::max<std::chrono::milliseconds>(
                               left, std::chrono::milliseconds(1)));
      const ssize_t got = ::recv(fd, buf, sizeof(buf), 0);
      if (got < 0) {
        if (errno == EAGAIN || errno == EWOULDBLOCK || errno == EINTR)
          continue;
        ::close(fd);
        throw NetError("recv failed: " + std::string(std::strerror(errno)));
      }
      if (got < 6) continue;  // not a reply frame
      const std::uint32_t reply_corr =
          (std::uint32_t(buf[0]) << 24) | (std::uint32_t(buf[1]) << 16) |
          (std::uint32_t(buf[2]) << 8) | std::uint32_t(buf[3]);
      if (reply_corr != corr) continue;  // stale reply from a past attempt
      final_result.status =
          buf[4] == 1 ? CallStatus::accept : CallStatus::reject;
      final_result.reason = buf[5];
      answered = true;
      break;
    }
    if (answered) {
      ::close(fd);
      return final_result;
    }
  }
  ::close(fd);
  return {CallStatus::timeout, 0};
}

}  // namespace idkit
