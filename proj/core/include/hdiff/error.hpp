#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hdiff {

using Complex = std::complex<double>;

/// Failure categories. The numeric values are the CLI exit codes.
enum class ErrorCode : int {
  validation = 2,
  convergence = 3,
  violation = 4,
};

/// Base of every error thrown by the library. Carries a short kind tag
/// ("NonConvergence", "ValidationFailed", ...) and an optional witness point.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string kind, const std::string& message,
        std::optional<Complex> witness = std::nullopt,
        std::optional<double> witness_value = std::nullopt)
      : std::runtime_error(message),
        code_(code),
        kind_(std::move(kind)),
        witness_(witness),
        witness_value_(witness_value) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& kind() const noexcept { return kind_; }
  const std::optional<Complex>& witness() const noexcept { return witness_; }
  const std::optional<double>& witness_value() const noexcept {
    return witness_value_;
  }

 private:
  ErrorCode code_;
  std::string kind_;
  std::optional<Complex> witness_;
  std::optional<double> witness_value_;
};

class BadLength : public Error {
 public:
  explicit BadLength(const std::string& message)
      : Error(ErrorCode::validation, "BadLength", message) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message,
                       std::optional<Complex> witness = std::nullopt)
      : Error(ErrorCode::validation, "DomainError", message, witness) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message)
      : Error(ErrorCode::validation, "ParseError", message) {}
};

class ValidationFailed : public Error {
 public:
  ValidationFailed(const std::string& message,
                   std::optional<Complex> witness = std::nullopt,
                   std::optional<double> witness_value = std::nullopt)
      : Error(ErrorCode::validation, "ValidationFailed", message, witness,
              witness_value) {}
};

class HypothesisViolated : public Error {
 public:
  HypothesisViolated(const std::string& message,
                     std::optional<Complex> witness = std::nullopt,
                     std::optional<double> witness_value = std::nullopt)
      : Error(ErrorCode::validation, "HypothesisViolated", message, witness,
              witness_value) {}
};

class DegenerateEdge : public Error {
 public:
  DegenerateEdge(const std::string& message, Complex witness)
      : Error(ErrorCode::validation, "DegenerateEdge", message, witness) {}
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& message, Complex witness,
                 double error_estimate)
      : Error(ErrorCode::convergence, "NonConvergence", message, witness,
              error_estimate) {}
};

}  // namespace hdiff
