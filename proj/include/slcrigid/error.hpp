#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace slc {

/// Error categories surfaced to the CLI. Each maps to a distinct code in
/// diagnostics so malformed documents can be told apart by scripts.
enum class ErrorCode {
  schema,
  index_out_of_range,
  not_homomorphism,
  invalid_action,
  precondition,
  unsupported_backend,
  degenerate,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::schema: return "schema";
    case ErrorCode::index_out_of_range: return "index-out-of-range";
    case ErrorCode::not_homomorphism: return "not-homomorphism";
    case ErrorCode::invalid_action: return "invalid-action";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::unsupported_backend: return "unsupported-backend";
    case ErrorCode::degenerate: return "degenerate";
  }
  return "unknown";
}

class InputError : public std::runtime_error {
 public:
  InputError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace slc
