#include "idkit/verify.hpp"

#include "idkit/errors.hpp"

namespace idkit {

const char* verify_reason_name(VerifyResult::Reason r) {
  switch (r) {
    case VerifyResult::Reason::accepted:
      return "accepted";
    case VerifyResult::Reason::tag_mismatch:
      return "tag-mismatch";
    case VerifyResult::Reason::malformed:
      return "malformed";
  }
  return "unknown";
}

const char* wire_error_name(WireError e) {
  switch (e) {
    case WireError::truncated:
      return "truncated";
    case WireError::bad_version:
      return "bad-version";
    case WireError::bad_scheme:
      return "bad-scheme";
    case WireError::bad_field:
      return "bad-field";
    case WireError::bad_params:
      return "bad-params";
    case WireError::bad_index:
      return "bad-index";
    case WireError::bad_pad:
      return "bad-pad";
    case WireError::trailing_data:
      return "trailing-data";
  }
  return "unknown";
}

}  // namespace idkit
