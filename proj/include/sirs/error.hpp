#pragma once

#include <stdexcept>
#include <string>

namespace sirs {

enum class ErrorKind {
  kInvalidParameter,
  kNotApplicable,
  kNumericalInstability,
  kUnresolvedThreshold,
  kConfigParse,
  kIo,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so the
// C API and the CLI can map it onto a status / exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace sirs
