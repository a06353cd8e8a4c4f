#include "sirs/error.hpp"

namespace sirs {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidParameter: return "invalid_parameter";
    case ErrorKind::kNotApplicable: return "not_applicable";
    case ErrorKind::kNumericalInstability: return "numerical_instability";
    case ErrorKind::kUnresolvedThreshold: return "unresolved_threshold";
    case ErrorKind::kConfigParse: return "config_parse";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace sirs
