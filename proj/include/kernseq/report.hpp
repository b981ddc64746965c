#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "kernseq/decision.hpp"
#include "kernseq/error.hpp"
#include "kernseq/oracle.hpp"
#include "kernseq/textio.hpp"

namespace kernseq {

inline constexpr int kReportSchema = 1;

enum ExitCode : int {
  kExitYes = 0,
  kExitNo = 1,
  kExitUnknown = 2,
  kExitInput = 3,
  kExitInternal = 4,
};

/// Result of comparing an equivalence with the kernel of a machine.
struct VerifyReport {
  bool equal = false;
  /// Exact automata check (letter-to-letter machines) or bounded enumeration.
  bool exact = false;
  /// Length bound of the enumeration, also used to find counterexamples.
  std::size_t bound = 0;
  std::optional<KernelMismatch> mismatch;
};

/// Exact for letter transducers read as ker, Mealy and subsequential
/// machines; bounded by `max_len` (default: default_bound) otherwise.
VerifyReport verify_kernel(const LetterTransducer& r, const Machine& machine, std::optional<std::size_t> max_len);

nlohmann::json to_json(const RelationValidation& v);
nlohmann::json to_json(const ClosureResult& c, bool supplied);
nlohmann::json to_json(const AnalysisReport& a);
nlohmann::json to_json(const Verdict& v, std::string_view problem);
nlohmann::json to_json(const VerifyReport& v, const Alphabet& alphabet);
nlohmann::json error_json(ErrorCode code, std::string_view message);

/// Adds the schema version and command name.
nlohmann::json envelope(std::string_view command, nlohmann::json body);

/// One "key: value" line per leaf, nested keys joined with '.'.
std::string render_text(const nlohmann::json& report);

int exit_code(const Verdict& v);
int exit_code(const RelationValidation& v);
int exit_code(const AnalysisReport& a);
int exit_code(const ClosureResult& c);
int exit_code(const VerifyReport& v);
int exit_code(ErrorCode code);

}  // namespace kernseq
