#pragma once

#include <cstdint>
#include <string>
#include <utility>

namespace idkit {

// Accept/reject outcome of a verification. Rejects distinguish a clean tag
// mismatch from a malformed word; the protocol answer is the same (reject),
// the reason is diagnostic.
struct VerifyResult {
  enum class Reason : std::uint8_t {
    accepted = 0,
    tag_mismatch = 1,
    malformed = 2,
  };

  bool accepted = false;
  Reason reason = Reason::malformed;
  std::string detail;

  static VerifyResult accept() {
    return {true, Reason::accepted, {}};
  }
  static VerifyResult reject_tags(std::string detail) {
    return {false, Reason::tag_mismatch, std::move(detail)};
  }
  static VerifyResult reject_malformed(std::string detail) {
    return {false, Reason::malformed, std::move(detail)};
  }
};

const char* verify_reason_name(VerifyResult::Reason r);

}  // namespace idkit
