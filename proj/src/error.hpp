#pragma once

#include <stdexcept>
#include <string>

namespace ratlas {

// Numeric values are part of the C ABI (see resolvent_atlas.h).
enum class ErrorCode : int {
  invalid_argument = 1,
  hypothesis_violation = 2,
  non_finite = 3,
  singular = 4,
  no_convergence = 5,
  not_unique = 6,
  parse = 7,
  overflow = 8,
  internal = 99,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const char* what) {
  if (!condition) fail(code, what);
}

}  // namespace ratlas
