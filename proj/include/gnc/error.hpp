#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gnc {

/// Failure categories raised across the toolkit. Each maps to a named error
/// condition of some operation; the CLI reports the name verbatim.
enum class ErrorKind {
  // group_core
  NotSquare,
  NotClosed,
  NoIdentity,
  NoInverse,
  NotAssociative,
  NotASubgroup,
  NotNormal,
  NotAbelian,
  NoExtension,
  OrderCapExceeded,
  // netcode_model
  Syntax,
  CyclicGraph,
  SourceHasInEdge,
  TerminalHasOutEdge,
  InvalidInstance,
  MissingLocal,
  MissingDecoder,
  // group_char
  DifferentAmbientGroup,
  InconsistentFamily,
  IncompleteCover,
  NotRepresentable,
  // cwl / conversions
  NotAHomomorphism,
  NotSurjective,
  NonPrimeModulus,
  DimensionMismatch,
  RankConditionViolated,
  NontrivialSourceIntersection,
  EquationOneViolated,
  IllDefinedRestriction,
  ExtensionNotFound,
  Internal,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NoIdentity: return "NoIdentity";
    case ErrorKind::NoInverse: return "NoInverse";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotAbelian: return "NotAbelian";
    case ErrorKind::NoExtension: return "NoExtension";
    case ErrorKind::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorKind::Syntax: return "Syntax";
    case ErrorKind::CyclicGraph: return "CyclicGraph";
    case ErrorKind::SourceHasInEdge: return "SourceHasInEdge";
    case ErrorKind::TerminalHasOutEdge: return "TerminalHasOutEdge";
    case ErrorKind::InvalidInstance: return "InvalidInstance";
    case ErrorKind::MissingLocal: return "MissingLocal";
    case ErrorKind::MissingDecoder: return "MissingDecoder";
    case ErrorKind::DifferentAmbientGroup: return "DifferentAmbientGroup";
    case ErrorKind::InconsistentFamily: return "InconsistentFamily";
    case ErrorKind::IncompleteCover: return "IncompleteCover";
    case ErrorKind::NotRepresentable: return "NotRepresentable";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::RankConditionViolated: return "RankConditionViolated";
    case ErrorKind::NontrivialSourceIntersection: return "NontrivialSourceIntersection";
    case ErrorKind::EquationOneViolated: return "EquationOneViolated";
    case ErrorKind::IllDefinedRestriction: return "IllDefinedRestriction";
    case ErrorKind::ExtensionNotFound: return "ExtensionNotFound";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failures carry the 1-based line they occurred on (0 when unknown).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorKind::Syntax, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace gnc
