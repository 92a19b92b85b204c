#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace piforge {

enum class Errc {
  DivisionByZero,
  NegativeRadicand,
  NotDenestable,
  NonUnitDivisor,
  NonzeroConstantInner,
  NonUnitBase,
  MalformedOde,
  PoleAtArgument,
  MissingTau,
  DivergentCompanion,
  DivergentFormula,
  PrecisionExhausted,
  TermCapReached,
  OutOfDisk,
  OutsideDomain,
  TooSlowAtBoundary,
  NotOddPrime,
  PrimeDividesBase,
  ParseError,
  DuplicateId,
  UnknownId,
  InvalidArgument,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Parse failures carry a 1-based position inside the source text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(Errc::ParseError, "line " + std::to_string(line) + ", column " +
                                    std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace piforge
