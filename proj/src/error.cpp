#include "kernseq/error.hpp"

namespace kernseq {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::AlphabetMismatch: return "ALPHABET_MISMATCH";
    case ErrorCode::NotEquivalence: return "NOT_EQUIVALENCE";
    case ErrorCode::NotFiner: return "NOT_FINER";
    case ErrorCode::NotLetterToLetter: return "NOT_LETTER_TO_LETTER";
    case ErrorCode::PreconditionViolated: return "PRECONDITION_VIOLATED";
    case ErrorCode::DimensionCap: return "DIMENSION_CAP";
    case ErrorCode::BadClosureWitness: return "BAD_CLOSURE_WITNESS";
    case ErrorCode::BoundTooLarge: return "BOUND_TOO_LARGE";
    case ErrorCode::Parse: return "PARSE_ERROR";
    case ErrorCode::Undeclared: return "UNDECLARED";
    case ErrorCode::Nondeterministic: return "NONDETERMINISTIC";
    case ErrorCode::InvalidInput: return "INVALID_INPUT";
    case ErrorCode::Internal: return "INTERNAL";
  }
  return "UNKNOWN_ERROR";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

ParseError::ParseError(ErrorCode code, std::size_t line, std::size_t column,
                       const std::string& message)
    : Error(code, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace kernseq
