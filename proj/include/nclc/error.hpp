#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nclc {

enum class ErrorKind {
  DescriptorMismatch,
  IndexOutOfRange,
  NotMonomial,
  ZeroElement,
  ParseError,
  InvalidLieAlgebra,
  NotHermitian,
  NotInverse,
  NotInvertibleByElimination,
  AntihermitianViolation,
  NotSymmetric,
  SolvabilityViolated,
  ParamViolation,
  NotWeaklySymmetric,
  InternalVerificationFailure,
  ConfigError,
  HermiticityError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DescriptorMismatch: return "DescriptorMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotMonomial: return "NotMonomial";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidLieAlgebra: return "InvalidLieAlgebra";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotInverse: return "NotInverse";
    case ErrorKind::NotInvertibleByElimination: return "NotInvertibleByElimination";
    case ErrorKind::AntihermitianViolation: return "AntihermitianViolation";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::SolvabilityViolated: return "SolvabilityViolated";
    case ErrorKind::ParamViolation: return "ParamViolation";
    case ErrorKind::NotWeaklySymmetric: return "NotWeaklySymmetric";
    case ErrorKind::InternalVerificationFailure: return "InternalVerificationFailure";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::HermiticityError: return "HermiticityError";
  }
  return "Unknown";
}

/// Every failure raised by the library. `kind()` is the stable,
/// machine-checkable part; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failures carry a 1-based column into the text that was parsed, and a
/// 1-based line when the text came from a file (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(std::size_t column, const std::string& message)
      : Error(ErrorKind::ParseError, "column " + std::to_string(column) + ": " + message),
        column_(column) {}

  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(ErrorKind::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_ = 0;
  std::size_t column_;
};

}  // namespace nclc
