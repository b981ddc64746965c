#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "kernseq/machine.hpp"
#include "kernseq/relation.hpp"

namespace kernseq {

enum class Outcome { Yes, No, Unknown };

enum class Reason {
  None,
  NotLengthPreserving,
  NotPrefixClosed,
  InfiniteIndex,
  ClosureCapExhausted,
};

std::string_view to_string(Outcome outcome);
std::string_view to_string(Reason reason);

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  Reason reason = Reason::None;
  /// Present iff outcome is Yes. For KerSeq^ll this is the Mealy machine; for
  /// KerSeq^lp the machine after final-output elimination.
  std::optional<SequentialTransducer> witness;
  /// KerSeq^lp only: the subsequential machine the witness was derived from.
  std::optional<SubsequentialTransducer> subsequential;
  /// KerSeq^lp only: the closure used (computed or supplied).
  std::optional<ClosureResult> closure;
  /// Word length up to which the final (sequential) witness was checked by
  /// enumeration; 0 when its kernel was checked exactly.
  std::size_t bounded_check_length = 0;
};

enum class IndexFiniteness { Finite, Infinite };
std::string_view to_string(IndexFiniteness index);

struct AnalysisReport {
  RelationValidation validation;
  bool length_preserving = false;
  std::optional<bool> prefix_closed;
  std::optional<IndexFiniteness> index_wrt_r;
  std::optional<ClosureResult> closure;
  bool closure_supplied = false;
  std::optional<IndexFiniteness> index_wrt_pplus;
};

/// sup_u |t(u)| < infinity, for a letter-to-letter transducer.
bool is_finitely_valued(const LetterTransducer& t);

/// Whether the equivalence `s` has finite index in `r`; throws NOT_FINER
/// unless s is included in r.
bool index_is_finite(const LetterTransducer& s, const LetterTransducer& r);

/// Throws BAD_CLOSURE_WITNESS unless `closure` contains the prefix closure
/// of `r`, is transitive, and is a fixpoint of Q -> Q + Q o P.
void validate_closure_witness(const LetterTransducer& r, const LetterTransducer& closure);

Verdict decide_kerseq_ll(const LetterTransducer& r);

Verdict decide_kerseq_lp(const LetterTransducer& r, const std::optional<LetterTransducer>& closure,
                         std::size_t closure_cap = 16);

AnalysisReport analyze(const LetterTransducer& r, const std::optional<LetterTransducer>& closure,
                       std::size_t closure_cap = 16);

}  // namespace kernseq
