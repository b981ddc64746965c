#pragma once

#include <cstddef>
#include <vector>

#include "kernseq/transducer.hpp"

namespace kernseq {

struct RelationValidation {
  /// Structural: the relation is given by a letter-to-letter transducer over
  /// a single alphabet (input alphabet equals output alphabet).
  bool is_letter_to_letter = false;
  bool is_reflexive = false;
  bool is_symmetric = false;
  bool is_transitive = false;

  bool is_equivalence() const { return is_letter_to_letter && is_reflexive && is_symmetric && is_transitive; }
};

/// States of a pair-deterministic complete transducer from which the
/// identity over the input alphabet is accepted.
struct DiagonalSet {
  std::vector<bool> member;

  bool contains(State state) const { return state < member.size() && member[state]; }
  std::size_t count() const;
};

struct SyntacticCongruence {
  /// Pair-deterministic, complete; finals restricted to `diagonal`.
  LetterTransducer relation;
  /// Indexed by the states of `relation` (which are those of canonical(r)).
  DiagonalSet diagonal;
};

/// When converged, `closure` is Q(k) = Q(k+1) for k = `exponent`; otherwise
/// it is Q(cap). A closure supplied by the caller has exponent 0.
struct ClosureResult {
  LetterTransducer closure;
  std::size_t exponent = 0;
  bool converged = false;
};

struct ClosureOptions {
  std::size_t cap = 16;
  /// Minimize every iterate; turning it off only costs automaton size.
  bool minimize = true;
};

RelationValidation validate_relation(const LetterTransducer& r);

/// Throws NOT_EQUIVALENCE unless `r` is a length-preserving equivalence.
void require_equivalence(const LetterTransducer& r);

/// Relational composition `second o first`: (u, w) such that u first v and
/// v second w for some v. The first-applied relation is the second argument.
LetterTransducer compose(const LetterTransducer& second, const LetterTransducer& first);

LetterTransducer inverse(const LetterTransducer& r);

/// Pair-deterministic complete minimal transducer for the same relation.
LetterTransducer canonical(const LetterTransducer& r);

/// Diagonal states of a complete pair-deterministic transducer over A x A.
DiagonalSet diagonal_states(const LetterTransducer& pair_dfa);

SyntacticCongruence syntactic_congruence(const LetterTransducer& r);

/// Every co-accessible state becomes final.
LetterTransducer prefix_closure(const LetterTransducer& r);

bool is_prefix_closed(const LetterTransducer& r);

/// Iterates Q(i+1) = Q(i) + Q(i) o p from Q(1) = p until two consecutive
/// iterates are language-equal or `options.cap` rounds are spent.
ClosureResult transitive_closure(const LetterTransducer& p, const ClosureOptions& options = {});

/// Graph of the function mapping each word to the lexicographically least
/// word of its class.
LetterTransducer min_lex_uniformizer(const LetterTransducer& s);

namespace detail {
// Unchecked variants for callers that already validated their input.
bool is_prefix_closed_unchecked(const LetterTransducer& r);
SyntacticCongruence syntactic_congruence_unchecked(const LetterTransducer& r);
LetterTransducer min_lex_uniformizer_unchecked(const LetterTransducer& s);
}  // namespace detail

}  // namespace kernseq
