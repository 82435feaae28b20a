#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace orbitlab {

enum class ErrorKind {
  AllZero,
  BaseLocusHit,
  NotAMorphism,
  CertificateInvalid,
  HeightOverflow,
  EmptySearch,
  DegenerateCover,
  InsufficientGaps,
  PreconditionViolated,
  DependentGenerators,
  DimensionMismatch,
  ParseError,
  DegreeMismatch,
  UnknownCommand,
  NotCertifiedWandering,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::AllZero: return "AllZero";
    case ErrorKind::BaseLocusHit: return "BaseLocusHit";
    case ErrorKind::NotAMorphism: return "NotAMorphism";
    case ErrorKind::CertificateInvalid: return "CertificateInvalid";
    case ErrorKind::HeightOverflow: return "HeightOverflow";
    case ErrorKind::EmptySearch: return "EmptySearch";
    case ErrorKind::DegenerateCover: return "DegenerateCover";
    case ErrorKind::InsufficientGaps: return "InsufficientGaps";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::DependentGenerators: return "DependentGenerators";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::UnknownCommand: return "UnknownCommand";
    case ErrorKind::NotCertifiedWandering: return "NotCertifiedWandering";
  }
  return "Unknown";
}

/// Base of every error raised by the library. `kind()` identifies the
/// failure; derived classes carry structured payloads where one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// f vanished identically at a point. `step` is the orbit index whose image
/// could not be formed (0 for a direct evaluation).
class BaseLocusHit : public Error {
 public:
  explicit BaseLocusHit(std::size_t step, const std::string& where = {})
      : Error(ErrorKind::BaseLocusHit,
              "all coordinate forms vanish at step " + std::to_string(step) +
                  (where.empty() ? "" : " (" + where + ")")),
        step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// A named hypothesis of an operation failed.
class PreconditionViolated : public Error {
 public:
  PreconditionViolated(std::string hypothesis, const std::string& detail)
      : Error(ErrorKind::PreconditionViolated, hypothesis + ": " + detail),
        hypothesis_(std::move(hypothesis)) {}
  const std::string& hypothesis() const noexcept { return hypothesis_; }

 private:
  std::string hypothesis_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
      : Error(ErrorKind::ParseError,
              line ? msg + " at line " + std::to_string(line) + ", column " +
                         std::to_string(column)
                   : msg),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace orbitlab
