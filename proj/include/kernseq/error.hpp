#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kernseq {

enum class ErrorCode {
  AlphabetMismatch,
  NotEquivalence,
  NotFiner,
  NotLetterToLetter,
  PreconditionViolated,
  DimensionCap,
  BadClosureWitness,
  BoundTooLarge,
  Parse,
  Undeclared,
  Nondeterministic,
  InvalidInput,
  Internal,
};

/// Upper-case identifier used in reports, e.g. "ALPHABET_MISMATCH".
std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A syntax or semantic error in a transducer file; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace kernseq
