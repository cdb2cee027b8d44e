#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace idkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument or violated precondition.
class ParamError : public Error {
 public:
  using Error::Error;
};

// Operands constructed over different fields.
class FieldMismatchError : public ParamError {
 public:
  using ParamError::ParamError;
};

// Exhaustive enumeration would exceed the configured budget.
class EnumerationError : public ParamError {
 public:
  using ParamError::ParamError;
};

enum class WireError : std::uint8_t {
  truncated,
  bad_version,
  bad_scheme,
  bad_field,
  bad_params,
  bad_index,
  bad_pad,
  trailing_data,
};

const char* wire_error_name(WireError e);

// Rejected byte stream; reason() says which check failed.
class WireFormatError : public Error {
 public:
  WireFormatError(WireError reason, const std::string& what)
      : Error(what), reason_(reason) {}
  WireError reason() const { return reason_; }

 private:
  WireError reason_;
};

class NetError : public Error {
 public:
  using Error::Error;
};

}  // namespace idkit
