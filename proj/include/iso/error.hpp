#pragma once

#include <stdexcept>
#include <string>

namespace iso {

enum class ErrorKind {
  domain,              // argument outside the operation's domain
  singular_point,      // evaluation where the warp vanishes
  unsupported_point,   // tabulated warp queried at a pole
  validation,          // malformed input data
  resolution,          // sampled data too coarse for the requested estimate
  empty_path,          // degenerate phase-plane path
  quadrature_failure,  // integral did not converge
  integration_failure, // ODE integration failed
  config,              // configuration text rejected
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

  /// True for errors caused by bad input rather than a numerical breakdown.
  bool is_validation() const noexcept;

 private:
  ErrorKind kind_;
};

}  // namespace iso
