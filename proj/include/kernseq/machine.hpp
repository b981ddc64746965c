#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kernseq/alphabet.hpp"
#include "kernseq/automata.hpp"

namespace kernseq {

struct SequentialEdge {
  Word output;
  State target;

  friend bool operator==(const SequentialEdge&, const SequentialEdge&) = default;
};

/// Input-deterministic transducer with word outputs (a Mealy machine when
/// every output has length one). Partial transition functions are allowed.
class SequentialTransducer {
 public:
  SequentialTransducer() = default;
  SequentialTransducer(Alphabet input, Alphabet output);

  const Alphabet& input_alphabet() const noexcept { return input_; }
  const Alphabet& output_alphabet() const noexcept { return output_; }
  std::size_t num_states() const noexcept { return final_.size(); }

  State add_state(bool final = true);
  /// Throws NONDETERMINISTIC if (source, in) already has a transition.
  void set_transition(State source, Letter in, Word output, State target);
  const std::optional<SequentialEdge>& transition(State source, Letter in) const;

  State initial() const noexcept { return initial_; }
  void set_initial(State state);
  bool is_final(State state) const { return final_.at(state); }
  void set_final(State state, bool final = true);

  bool is_total() const;
  bool is_letter_to_letter() const;

  /// State reached on `word`, if the run exists.
  std::optional<State> reach(const Word& word) const;
  /// Output on `word` if the run exists and ends in a final state.
  std::optional<Word> run(const Word& word) const;

  void set_note(State state, std::string note);
  const std::string& note(State state) const;

  friend bool operator==(const SequentialTransducer& lhs, const SequentialTransducer& rhs);

 private:
  void check_state(State state) const;

  Alphabet input_;
  Alphabet output_;
  State initial_ = 0;
  std::vector<bool> final_;
  std::vector<std::optional<SequentialEdge>> table_;  // state * |input| + letter
  std::vector<std::string> notes_;
};

/// A letter-to-letter sequential transducer with a final output letter on
/// every final state.
class SubsequentialTransducer {
 public:
  SubsequentialTransducer() = default;
  explicit SubsequentialTransducer(SequentialTransducer base);

  const SequentialTransducer& base() const noexcept { return base_; }
  SequentialTransducer& base() noexcept { return base_; }

  void set_final_output(State state, Letter letter);
  std::optional<Letter> final_output(State state) const;

  /// Throws INVALID_INPUT unless the base is letter-to-letter and the final
  /// output is defined exactly on the final states.
  void validate() const;

  /// Base output followed by the final output letter.
  std::optional<Word> run(const Word& word) const;

  friend bool operator==(const SubsequentialTransducer&, const SubsequentialTransducer&) = default;

 private:
  SequentialTransducer base_;
  std::vector<std::optional<Letter>> final_output_;
};

}  // namespace kernseq
