#include "iso/error.hpp"

namespace iso {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain error";
    case ErrorKind::singular_point: return "singular-point error";
    case ErrorKind::unsupported_point: return "unsupported-point error";
    case ErrorKind::validation: return "validation error";
    case ErrorKind::resolution: return "resolution error";
    case ErrorKind::empty_path: return "empty-path error";
    case ErrorKind::quadrature_failure: return "quadrature failure";
    case ErrorKind::integration_failure: return "integration failure";
    case ErrorKind::config: return "config error";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

bool Error::is_validation() const noexcept {
  switch (kind_) {
    case ErrorKind::domain:
    case ErrorKind::unsupported_point:
    case ErrorKind::validation:
    case ErrorKind::config:
      return true;
    default:
      return false;
  }
}

}  // namespace iso
