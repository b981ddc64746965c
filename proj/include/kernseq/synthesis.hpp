#pragma once

#include <cstddef>
#include <vector>

#include "kernseq/machine.hpp"
#include "kernseq/relation.hpp"

namespace kernseq {

/// An l x l matrix of states of the governing pair automaton. Entry (m, n)
/// is the state reached on the pair of the m-th and n-th least class
/// representatives; the row index of a synthesized state is kept alongside.
struct MatrixState {
  std::size_t dimension = 0;
  std::vector<State> entries;  // row-major

  State at(std::size_t row, std::size_t column) const { return entries[row * dimension + column]; }

  friend auto operator<=>(const MatrixState&, const MatrixState&) = default;
};

/// Deterministic complete automaton whose states fill the matrices, with the
/// two equivalences the construction reads off a state: `related` (same
/// output class) and `diagonal` (syntactically equivalent, must refine
/// `related`).
struct GoverningAutomaton {
  DenseDfa dfa;
  std::size_t letters = 0;  // size of A; dfa letters are pairs over A x A
  std::vector<bool> related;
  std::vector<bool> diagonal;

  State step(State state, Letter a, Letter b) const { return dfa.next(state, a * static_cast<Letter>(letters) + b); }
};

/// Partition of {0..l-1} x A induced by a matrix. Pairs (m, a) are numbered
/// m * |A| + a, which is also their lexicographic order.
struct SuccessorPartition {
  std::size_t dimension = 0;
  std::size_t letters = 0;
  /// Least pair of the related-class of each pair.
  std::vector<std::size_t> related_class;
  /// Least pair of the syntactic class of each pair.
  std::vector<std::size_t> syntactic_class;

  /// Pairs of the related-class `cls` that are least in their syntactic
  /// class, in increasing order.
  std::vector<std::size_t> representatives(std::size_t cls) const;
  /// The output assigned to a related-class: its least element.
  std::size_t output(std::size_t cls) const { return cls; }
};

/// Throws INTERNAL if either relation read from the matrix is not an
/// equivalence or `diagonal` does not refine `related`.
SuccessorPartition partition_successors(const GoverningAutomaton& governing, const MatrixState& matrix);

/// Matrix of the successor state for a related-class.
MatrixState successor_matrix(const GoverningAutomaton& governing, const MatrixState& matrix,
                             const SuccessorPartition& partition, std::size_t cls);

struct SynthesisOptions {
  /// Largest matrix dimension before DIMENSION_CAP is raised.
  std::size_t dimension_cap = 64;
  /// Check equivalence, prefix-closedness and finite index first.
  bool check_preconditions = true;
};

/// Output letter names: "o<index>_<letter>" (1-based index) and "t<class>".
std::string output_letter_name(std::size_t index, const std::string& letter);
std::string final_letter_name(std::size_t cls);

/// Mealy machine whose kernel is `r`. Requires `r` to be a prefix-closed
/// length-preserving equivalence with finite syntactic index.
SequentialTransducer synthesize_mealy(const LetterTransducer& r, const SynthesisOptions& options = {});

/// Subsequential letter-to-letter machine whose kernel is `r`, built over
/// the product of `r` and its closure witness `pplus`.
SubsequentialTransducer synthesize_subsequential(const LetterTransducer& r, const LetterTransducer& pplus,
                                                 const SynthesisOptions& options = {});

/// Replaces the final output by modular repetition counts, yielding a
/// sequential (not letter-to-letter) machine with the same kernel.
SequentialTransducer eliminate_final_output(const SubsequentialTransducer& m);

/// Self-product joined on equal outputs. Requires a letter-to-letter machine.
LetterTransducer kernel_transducer(const SequentialTransducer& f);
LetterTransducer kernel_transducer(const SubsequentialTransducer& f);

struct MatrixStateInfo {
  MatrixState matrix;
  std::size_t row = 0;
};

/// A synthesized machine together with the matrix state behind each of its
/// states and the automaton the matrices range over.
template <class Machine>
struct SynthesisTrace {
  Machine machine;
  std::vector<MatrixStateInfo> states;
  GoverningAutomaton governing;
};

SynthesisTrace<SequentialTransducer> synthesize_mealy_traced(const LetterTransducer& r,
                                                             const SynthesisOptions& options = {});
SynthesisTrace<SubsequentialTransducer> synthesize_subsequential_traced(const LetterTransducer& r,
                                                                        const LetterTransducer& pplus,
                                                                        const SynthesisOptions& options = {});

}  // namespace kernseq
