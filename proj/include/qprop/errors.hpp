#pragma once

#include <stdexcept>
#include <string>

namespace qprop {

/// Base class for all library failures. `code()` is the CLI exit code the
/// failure maps onto.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, int code = 1)
      : std::runtime_error(what), code_(code) {}
  int code() const noexcept { return code_; }
  virtual const char* kind() const noexcept { return "error"; }

 private:
  int code_;
};

/// Malformed input: bad configuration value, unknown name, wrong grid size.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what, 2) {}
  const char* kind() const noexcept override { return "config"; }
};

/// A Wei-Norman factor coefficient diverged (Riccati pole of w1).
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, double time)
      : Error(what, 3), time_(time) {}
  const char* kind() const noexcept override { return "blowup"; }
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// A spectral multiplier exceeded the configured cap.
class StabilityError : public Error {
 public:
  explicit StabilityError(const std::string& what) : Error(what, 4) {}
  const char* kind() const noexcept override { return "stability"; }
};

/// Requested combination cannot be expressed (time-dependent quadratic part
/// with damping, complex affine coefficients, ...).
class RepresentationError : public Error {
 public:
  explicit RepresentationError(const std::string& what) : Error(what, 2) {}
  const char* kind() const noexcept override { return "representation"; }
};

/// Fock-space truncation is too small for the state.
class CutoffError : public Error {
 public:
  explicit CutoffError(const std::string& what) : Error(what, 5) {}
  const char* kind() const noexcept override { return "cutoff"; }
};

}  // namespace qprop
