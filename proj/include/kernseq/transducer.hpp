#pragma once

#include <utility>

#include "kernseq/automata.hpp"

namespace kernseq {

/// A letter-to-letter transducer: an Nfa over the pair alphabet
/// input x output. It realizes a length-preserving relation by construction.
class LetterTransducer {
 public:
  LetterTransducer() = default;
  LetterTransducer(Alphabet input, Alphabet output);
  /// `underlying` must be over Alphabet::product(input, output).
  LetterTransducer(Alphabet input, Alphabet output, Nfa underlying);

  const Alphabet& input_alphabet() const noexcept { return input_; }
  const Alphabet& output_alphabet() const noexcept { return output_; }
  const Nfa& automaton() const noexcept { return nfa_; }

  Letter pair(Letter in, Letter out) const { return in * static_cast<Letter>(output_.size()) + out; }
  Letter input_of(Letter pair_letter) const { return pair_letter / static_cast<Letter>(output_.size()); }
  Letter output_of(Letter pair_letter) const { return pair_letter % static_cast<Letter>(output_.size()); }

  State add_state(bool final = false) { return nfa_.add_state(final); }
  void add_transition(State source, Letter in, Letter out, State target);
  void add_initial(State state) { nfa_.add_initial(state); }
  void set_final(State state, bool final = true) { nfa_.set_final(state, final); }

  /// Pair membership; words of different lengths are never related.
  bool accepts(const Word& in, const Word& out) const;

  /// Same relation on the same alphabets, a different automaton.
  LetterTransducer with_automaton(Nfa underlying) const;

  friend bool operator==(const LetterTransducer&, const LetterTransducer&) = default;

 private:
  Alphabet input_;
  Alphabet output_;
  Nfa nfa_;
};

/// The identity relation over `alphabet` (one state, initial and final).
LetterTransducer identity_relation(const Alphabet& alphabet);

/// All pairs of words of equal length over `alphabet`.
LetterTransducer same_length_relation(const Alphabet& alphabet);

}  // namespace kernseq
