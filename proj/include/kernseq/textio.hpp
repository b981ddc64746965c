#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kernseq/machine.hpp"
#include "kernseq/transducer.hpp"

namespace kernseq {

// Line-oriented text format, '#' starts a comment:
//
//   kind letter-transducer | sequential | subsequential
//   inputs <letter>+
//   outputs <letter>+
//   states <id>+
//   initial <id>            (letter transducers may use: initials <id>*)
//   finals <id>*
//   <src> <in-letter> / <out-word or -> -> <dst>
//   finalout <state> <letter>   (subsequential only, one per final state)
//
// Out-words are whitespace-separated letters. Letter transducers need exactly
// one output letter per transition.

using Machine = std::variant<LetterTransducer, SequentialTransducer, SubsequentialTransducer>;

struct TransducerFile {
  Machine machine;
  /// Declared state identifiers, indexed by state.
  std::vector<std::string> state_names;

  const LetterTransducer* relation() const { return std::get_if<LetterTransducer>(&machine); }
};

std::string_view kind_name(const Machine& machine);

/// Throws ParseError (PARSE_ERROR, UNDECLARED, NONDETERMINISTIC,
/// NOT_LETTER_TO_LETTER or INVALID_INPUT) with the offending position.
TransducerFile parse_transducer(std::string_view text);

/// Throws INVALID_INPUT if the file cannot be read.
TransducerFile read_transducer_file(const std::filesystem::path& path);

/// Canonical text. States are printed with `state_names` when given (one per
/// state), otherwise by number. Machine state notes become comments.
std::string print_transducer(const Machine& machine, const std::vector<std::string>& state_names = {});
std::string print_transducer(const TransducerFile& file);

void write_text_file(const std::filesystem::path& path, const std::string& text);

/// `machine` as a letter transducer, or INVALID_INPUT naming `what`.
const LetterTransducer& require_relation(const TransducerFile& file, std::string_view what);

}  // namespace kernseq
