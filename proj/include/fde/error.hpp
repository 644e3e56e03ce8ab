#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fde {

enum class Errc {
  UnsupportedFamily,
  BadInterval,
  OutOfDomain,
  DerivativeOrderTooHigh,
  SingularBcSystem,
  GridTooSmall,
  IndexOutOfRange,
  SyntaxError,
  UnknownIdentifier,
  MissingVariable,
  DomainError,
  ParseError,
  PhiOutOfRange,
  UnknownProblem,
  InvalidConfig,
  NoConvergence,
  NonFiniteIterate,
  MissingLipschitz,
  UnknownTable,
  TableMismatch,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::UnsupportedFamily: return "UnsupportedFamily";
    case Errc::BadInterval: return "BadInterval";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::DerivativeOrderTooHigh: return "DerivativeOrderTooHigh";
    case Errc::SingularBcSystem: return "SingularBcSystem";
    case Errc::GridTooSmall: return "GridTooSmall";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownIdentifier: return "UnknownIdentifier";
    case Errc::MissingVariable: return "MissingVariable";
    case Errc::DomainError: return "DomainError";
    case Errc::ParseError: return "ParseError";
    case Errc::PhiOutOfRange: return "PhiOutOfRange";
    case Errc::UnknownProblem: return "UnknownProblem";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::NonFiniteIterate: return "NonFiniteIterate";
    case Errc::MissingLipschitz: return "MissingLipschitz";
    case Errc::UnknownTable: return "UnknownTable";
    case Errc::TableMismatch: return "TableMismatch";
  }
  return "Unknown";
}

/// Base exception for every failure raised by the library. The code is
/// stable and is what tests and the CLI dispatch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace fde
